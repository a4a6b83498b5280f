#include "doctest.h"

#include "ness/error.hpp"
#include "ness/zero_modes.hpp"

#include <numbers>

using namespace ness;

namespace {

ChainSpec txy(int n, double h_bar, double gamma) {
  const TxyCouplings c = from_reduced(gamma, h_bar, 1.0);
  return ChainSpec::uniform_txy(n, c.h, c.jx, c.jy);
}

}  // namespace

TEST_CASE("decoupled end Majoranas of the Ising chain") {
  for (int n : {3, 10, 25}) {
    const ZeroModeReport r = find_zero_modes(build_majorana(ChainSpec::uniform_txy(n, 0, 1, 0)));
    CHECK(!r.gapless);
    CHECK(r.count == 1);
    REQUIRE(r.modes.size() == 2);
    for (const ZeroMode& m : r.modes) {
      const Eigen::Index at = m.end == ModeEnd::Left ? 0 : 2 * n - 1;
      CHECK(std::abs(m.vector(at)) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(m.end_weight > 0.9);
    }
  }
}

TEST_CASE("phase examples at N=40") {
  CHECK(find_zero_modes(build_majorana(ChainSpec::uniform_3si(40, 1, 0, 3))).count == 2);
  CHECK(find_zero_modes(build_majorana(ChainSpec::uniform_3si(40, 1, 3, 0))).count == 1);
  CHECK(find_zero_modes(build_majorana(ChainSpec::uniform_3si(40, 1, 0.3, 0.2))).count == 0);
  CHECK(find_zero_modes(build_majorana(txy(40, 2, 1))).count == 0);
  CHECK(find_zero_modes(build_majorana(txy(40, 0.5, 1))).count == 1);
}

TEST_CASE("count is stable under the threshold") {
  const ChainSpec specs[] = {ChainSpec::uniform_3si(40, 1, 0, 3), ChainSpec::uniform_3si(40, 1, 3, 0),
                             ChainSpec::uniform_3si(40, 1, 0.3, 0.2), txy(40, 0.3, 0.8)};
  for (const ChainSpec& s : specs) {
    const MajoranaForm f = build_majorana(s);
    const int base = find_zero_modes(f).count;
    for (double t : {1e-7, 1e-5}) {
      ZeroModeOptions o;
      o.rel_threshold = t;
      CHECK(find_zero_modes(f, o).count == base);
    }
  }
}

TEST_CASE("end modes are localised and decay length is size independent") {
  const ZeroModeReport r40 = find_zero_modes(build_majorana(txy(40, 0.5, 1)));
  REQUIRE(r40.modes.size() == 2);
  for (const ZeroMode& m : r40.modes) {
    const std::vector<double> amp = site_amplitudes(m.vector);
    double far = 0;
    if (m.end == ModeEnd::Left)
      for (int i = 36; i < 40; ++i) far += amp[i] * amp[i];
    else
      for (int i = 0; i < 4; ++i) far += amp[i] * amp[i];
    CHECK(far < 1e-6);
  }
  const double ref = r40.modes.front().decay_length;
  CHECK(std::isfinite(ref));
  for (int n : {30, 50}) {
    const ZeroModeReport r = find_zero_modes(build_majorana(txy(n, 0.5, 1)));
    REQUIRE(!r.modes.empty());
    CHECK(r.modes.front().decay_length == doctest::Approx(ref).epsilon(0.1));
  }
  // pure exponential profile of the h/J = 0.5 Ising chain: amplitude ratio 0.5 per site
  CHECK(ref == doctest::Approx(1 / std::log(2.0)).epsilon(0.05));
}

TEST_CASE("gapless bulk is reported") {
  const ZeroModeReport r = find_zero_modes(build_majorana(txy(200, 1.0, 1)));
  CHECK(r.gapless);
  CHECK(r.smallest_singular_values.size() <= 8);
  CHECK(std::is_sorted(r.smallest_singular_values.begin(), r.smallest_singular_values.end()));
  MajoranaForm zero{3, Eigen::MatrixXd::Zero(6, 6)};
  CHECK_THROWS_AS(find_zero_modes(zero), SpecificationError);
}

TEST_CASE("bulk gap") {
  CHECK(bulk_gap(txy(400, 0.5, 0), Boundary::Periodic) < 5e-2);
  CHECK(bulk_gap(ChainSpec::uniform_3si(400, 1, 0.5, 1.5), Boundary::Periodic) < 5e-2);
  CHECK(bulk_gap(ChainSpec::uniform_3si(400, 1, 0.5, 0.5), Boundary::Periodic) < 5e-2);
  CHECK(bulk_gap(ChainSpec::uniform_3si(400, 1, 2.0, -1.0), Boundary::Periodic) < 5e-2);
  const double deep = bulk_gap(txy(400, 2, 1), Boundary::Periodic);
  CHECK(deep > 0.5);
  CHECK(deep == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(bulk_gap(txy(40, 2, 1), Boundary::Open) > 0.5);
  CHECK_THROWS_AS(bulk_gap(txy(3, 2, 1), Boundary::Open), SpecificationError);
}

TEST_CASE("anisotropic gap closes as 1/N") {
  const double g100 = bulk_gap(txy(100, 0.5, 0), Boundary::Periodic);
  const double g200 = bulk_gap(txy(200, 0.5, 0), Boundary::Periodic);
  const double g400 = bulk_gap(txy(400, 0.5, 0), Boundary::Periodic);
  CHECK(g100 / g200 == doctest::Approx(2.0).epsilon(0.3));
  CHECK(g200 / g400 == doctest::Approx(2.0).epsilon(0.3));
}

TEST_CASE("duality maps gap closings") {
  for (double l1 : {0.3, 0.8}) {
    for (double l2 : {1 + l1, 1 - l1}) {
      // 3SI on the line and its TXY dual: h = l1, jx = 1, jy = -l2
      const double g3 = bulk_gap(ChainSpec::uniform_3si(200, 1, l1, l2), Boundary::Periodic);
      const double gt = bulk_gap(ChainSpec::uniform_txy(200, l1, 1, -l2), Boundary::Periodic);
      CHECK(g3 < 5e-2);
      CHECK(gt < 5e-2);
    }
  }
  CHECK(bulk_gap(ChainSpec::uniform_3si(200, 1, 0.3, 0.2), Boundary::Periodic) > 0.2);
  CHECK(bulk_gap(ChainSpec::uniform_txy(200, 0.3, 1, -0.2), Boundary::Periodic) > 0.2);
}

TEST_CASE("soft mode momentum") {
  CHECK(soft_mode_momentum(0) == doctest::Approx(std::numbers::pi / 2));
  CHECK(soft_mode_momentum(1) == doctest::Approx(std::numbers::pi));
  CHECK(soft_mode_momentum(0.5) == doctest::Approx(2.0944).epsilon(1e-4));
  CHECK_THROWS_AS(soft_mode_momentum(1.1), SpecificationError);
}

TEST_CASE("crest prediction") {
  const std::vector<double> c = predict_crests(12);
  const std::vector<double> expect{0.2588, 0.5, 0.7071, 0.8660, 0.9659};
  REQUIRE(c.size() == expect.size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(expect[i]).epsilon(1e-4));
  CHECK(predict_crests(2).empty());
  const std::vector<double> fine = predict_crests(400);
  double widest = 0;
  for (std::size_t i = 1; i < fine.size(); ++i) widest = std::max(widest, fine[i] - fine[i - 1]);
  CHECK(widest < 0.01);
  CHECK_THROWS_AS(predict_crests(1), SpecificationError);
}
