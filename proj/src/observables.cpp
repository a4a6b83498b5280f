#include "ness/observables.hpp"

#include "ness/error.hpp"

#include <cmath>
#include <string>

namespace ness {

namespace {

void check_matrix(const Eigen::Ref<const Eigen::MatrixXd>& c) {
  if (c.rows() != c.cols() || c.rows() % 2 != 0 || c.rows() == 0) {
    throw SpecificationError("correlation matrix must be square with even, nonzero dimension");
  }
}

void check_index(const Eigen::Ref<const Eigen::MatrixXd>& c, int j) {
  if (j < 0 || j >= c.rows()) {
    throw SpecificationError("Majorana index " + std::to_string(j) + " out of range [0, " +
                             std::to_string(c.rows()) + ")");
  }
}

void check_ends(const Eigen::Ref<const Eigen::MatrixXd>& c) {
  check_matrix(c);
  if (c.rows() < 4) throw SpecificationError("end-to-end correlators need at least two sites");
}

}  // namespace

std::complex<double> pair_expectation(const Eigen::Ref<const Eigen::MatrixXd>& c, int j, int k) {
  check_matrix(c);
  check_index(c, j);
  check_index(c, k);
  return {j == k ? 1.0 : 0.0, -c(j, k)};
}

std::complex<double> quartic_wick(const Eigen::Ref<const Eigen::MatrixXd>& c, int a, int b, int cc, int d) {
  if (a == b || a == cc || a == d || b == cc || b == d || cc == d) {
    throw SpecificationError("quartic_wick needs four distinct indices");
  }
  return pair_expectation(c, a, b) * pair_expectation(c, cc, d) -
         pair_expectation(c, a, cc) * pair_expectation(c, b, d) +
         pair_expectation(c, a, d) * pair_expectation(c, b, cc);
}

double sz(const Eigen::Ref<const Eigen::MatrixXd>& c, int site) {
  check_matrix(c);
  const int n = static_cast<int>(c.rows() / 2);
  if (site < 0 || site >= n) {
    throw SpecificationError("site " + std::to_string(site) + " out of range [0, " + std::to_string(n) + ")");
  }
  return -c(2 * site, 2 * site + 1);
}

double g2_end_to_end(const Eigen::Ref<const Eigen::MatrixXd>& c, double denom_tol) {
  check_ends(c);
  const Eigen::Index m = c.rows();
  const double denom = (1.0 - c(0, 1)) * (1.0 - c(m - 2, m - 1));
  if (!(denom >= denom_tol)) {
    throw UndefinedCorrelator("g2 denominator " + std::to_string(denom) + " below tolerance: an end emits no photons");
  }
  const double numer = c(0, m - 2) * c(1, m - 1) - c(0, m - 1) * c(1, m - 2);
  return 1.0 - numer / denom;
}

double zz_ends(const Eigen::Ref<const Eigen::MatrixXd>& c) {
  check_ends(c);
  const int m = static_cast<int>(c.rows());
  // sz_i = -i w_{2i} w_{2i+1}, so sz_1 sz_N = -<w0 w1 w_{m-2} w_{m-1}>.
  return -quartic_wick(c, 0, 1, m - 2, m - 1).real();
}

double g2_covariance_form(const Eigen::Ref<const Eigen::MatrixXd>& c, double denom_tol) {
  check_ends(c);
  const int n = static_cast<int>(c.rows() / 2);
  const double s1 = sz(c, 0);
  const double sn = sz(c, n - 1);
  const double denom = (1.0 + s1) * (1.0 + sn);
  if (!(denom >= denom_tol)) {
    throw UndefinedCorrelator("g2 denominator " + std::to_string(denom) + " below tolerance: an end emits no photons");
  }
  return 1.0 + (zz_ends(c) - s1 * sn) / denom;
}

NessObservables evaluate_observables(const Eigen::Ref<const Eigen::MatrixXd>& c, double denom_tol) {
  check_ends(c);
  const Eigen::Index m = c.rows();
  NessObservables o;
  o.c_left = c(0, 1);
  o.c_right = c(m - 2, m - 1);
  o.c_0_m2 = c(0, m - 2);
  o.c_0_m1 = c(0, m - 1);
  o.c_1_m2 = c(1, m - 2);
  o.c_1_m1 = c(1, m - 1);
  o.sz_left = -o.c_left;
  o.sz_right = -o.c_right;
  o.g2 = g2_end_to_end(c, denom_tol);
  return o;
}

}  // namespace ness
