#include "doctest.h"
#include "helpers.hpp"

#include "ness/error.hpp"
#include "ness/observables.hpp"
#include "ness/oracle.hpp"
#include "ness/third_quant.hpp"

using namespace ness;

namespace {

/// Covariance matrix of a random Gaussian state: O diag(t_k [[0,1],[-1,0]]) O^T with |t_k| < 1.
Eigen::MatrixXd random_physical_c(int n, std::mt19937_64& rng) {
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    const double t = testing::uniform(rng, -0.95, 0.95);
    block(2 * k, 2 * k + 1) = t;
    block(2 * k + 1, 2 * k) = -t;
  }
  const Eigen::MatrixXd o = testing::random_orthogonal(2 * n, rng);
  return o * block * o.transpose();
}

}  // namespace

TEST_CASE("pair expectation") {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(4, 4);
  CHECK(pair_expectation(c, 2, 2) == std::complex<double>(1, 0));
  CHECK(pair_expectation(c, 0, 3) == std::complex<double>(0, 0));
  const CorrelationMatrix single = solve_chain(ChainSpec::uniform_txy(1, 0.3, 0, 0), {1, 0, 0, 0});
  CHECK(std::abs(pair_expectation(single.c, 0, 1) - std::complex<double>(0, -1)) <= 1e-14);
  CHECK_THROWS_AS(pair_expectation(c, 0, 4), SpecificationError);
  CHECK_THROWS_AS(pair_expectation(c, -1, 0), SpecificationError);
}

TEST_CASE("quartic wick") {
  CHECK(quartic_wick(Eigen::MatrixXd::Zero(6, 6), 0, 1, 4, 5) == std::complex<double>(0, 0));
  std::mt19937_64 rng(2);
  const Eigen::MatrixXd c = random_physical_c(3, rng);
  // <w0 w1 w4 w5> = -(C01 C45 - C04 C15 + C05 C14)
  const double expect = -(c(0, 1) * c(4, 5) - c(0, 4) * c(1, 5) + c(0, 5) * c(1, 4));
  CHECK(std::abs(quartic_wick(c, 0, 1, 4, 5) - expect) <= 1e-15);
  CHECK_THROWS_AS(quartic_wick(c, 0, 1, 1, 5), SpecificationError);
}

TEST_CASE("quartic wick matches the dense NESS") {
  std::mt19937_64 rng(41);
  const ChainSpec chain = testing::random_txy(4, rng);
  const BathSpec bath = testing::random_bath(rng);
  const CorrelationMatrix c = solve_chain(chain, bath);
  const DenseNess ness = solve_dense_chain(chain, bath);
  const int idx[][4] = {{0, 1, 6, 7}, {0, 2, 5, 7}, {1, 3, 4, 6}, {2, 3, 4, 5}};
  for (const auto& q : idx) {
    const Eigen::MatrixXcd op = majorana_operator(4, q[0]) * majorana_operator(4, q[1]) *
                                majorana_operator(4, q[2]) * majorana_operator(4, q[3]);
    const std::complex<double> direct = (op * ness.rho).trace();
    CHECK(std::abs(quartic_wick(c.c, q[0], q[1], q[2], q[3]) - direct) <= 1e-8);
  }
}

TEST_CASE("sz") {
  const CorrelationMatrix cold = solve_chain(ChainSpec::uniform_txy(1, 0.3, 0, 0), {1, 0, 0, 0});
  CHECK(sz(cold.c, 0) == doctest::Approx(-1.0).epsilon(1e-14));
  const CorrelationMatrix warm = solve_chain(ChainSpec::uniform_txy(1, 0.3, 0, 0), {0.02, 0, 0.1, 0});
  CHECK(sz(warm.c, 0) == doctest::Approx(-1 / 1.2).epsilon(1e-12));
  const CorrelationMatrix hot = solve_chain(ChainSpec::uniform_txy(1, 0.3, 0, 0), {0.02, 0, 1e8, 0});
  CHECK(std::abs(sz(hot.c, 0)) <= 1e-8);
  CHECK_THROWS_AS(sz(cold.c, 1), SpecificationError);
}

TEST_CASE("sz flips under swapped rates at a decoupled site") {
  for (double n : {0.0, 0.4, 2.0}) {
    ChainSpec spin = ChainSpec::uniform_txy(1, 0.6, 0, 0);
    const CorrelationMatrix c = solve_chain(spin, {0.5, 0, n, 0});
    // swapping the up and down rates flips Gamma-, i.e. the sign of Y
    const MajoranaForm f = build_majorana(spin);
    DriftPair d = build_drift(f, build_bath_matrix({0.5, 0, n, 0}, 1));
    d.y = -d.y;
    CHECK(sz(solve_ness(d).c, 0) == doctest::Approx(-sz(c.c, 0)).epsilon(1e-14));
  }
}

TEST_CASE("g2 of product states is one") {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(8, 8);
  c(0, 1) = 0.3;
  c(1, 0) = -0.3;
  c(6, 7) = -0.6;
  c(7, 6) = 0.6;
  c(2, 3) = 0.1;
  c(3, 2) = -0.1;
  CHECK(g2_end_to_end(c) == 1.0);
  CHECK(g2_covariance_form(c) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("g2 undefined without emission") {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(4, 4);
  c(0, 1) = 1;
  c(1, 0) = -1;
  CHECK_THROWS_AS(g2_end_to_end(c), UndefinedCorrelator);
  CHECK_THROWS_AS(evaluate_observables(c), UndefinedCorrelator);
  CHECK_THROWS_AS(evaluate_observables(Eigen::MatrixXd::Zero(2, 2)), SpecificationError);
}

TEST_CASE("covariance form equals the closed form") {
  std::mt19937_64 rng(99);
  double worst = 0;
  for (int draw = 0; draw < 500; ++draw) {
    const Eigen::MatrixXd c = random_physical_c(2 + draw % 6, rng);
    worst = std::max(worst, std::abs(g2_end_to_end(c) - g2_covariance_form(c)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("evaluate observables collects raw entries") {
  std::mt19937_64 rng(4);
  const Eigen::MatrixXd c = random_physical_c(3, rng);
  const NessObservables o = evaluate_observables(c);
  CHECK(o.sz_left == -c(0, 1));
  CHECK(o.sz_right == -c(4, 5));
  CHECK(o.c_0_m2 == c(0, 4));
  CHECK(o.c_0_m1 == c(0, 5));
  CHECK(o.c_1_m2 == c(1, 4));
  CHECK(o.c_1_m1 == c(1, 5));
  CHECK(o.g2 == g2_end_to_end(c));
  CHECK(o.g2 >= 0);
}
