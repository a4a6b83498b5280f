#pragma once

// NESS observables from the Majorana correlation matrix (Wick's theorem).
// All Majorana and site indices are zero-based.

#include "ness/third_quant.hpp"

#include <Eigen/Dense>

#include <complex>

namespace ness {

/// <w_j w_k> = delta_jk - i C_jk.
std::complex<double> pair_expectation(const Eigen::Ref<const Eigen::MatrixXd>& c, int j, int k);

/// <w_a w_b w_c w_d> for distinct indices: <ab><cd> - <ac><bd> + <ad><bc>.
std::complex<double> quartic_wick(const Eigen::Ref<const Eigen::MatrixXd>& c, int a, int b, int cc, int d);

/// <sz_i> = -C_{2i,2i+1}.
double sz(const Eigen::Ref<const Eigen::MatrixXd>& c, int site);

/// Equal-time end-to-end photon cross correlation.
///
/// g2 = 1 - (C_{0,2N-2} C_{1,2N-1} - C_{0,2N-1} C_{1,2N-2}) / ((1 - C_{01})(1 - C_{2N-2,2N-1})).
/// Throws UndefinedCorrelator when the denominator is below denom_tol.
double g2_end_to_end(const Eigen::Ref<const Eigen::MatrixXd>& c, double denom_tol = 1e-12);

/// g2 from the sz covariance form, each moment evaluated by Wick; used as a cross-check.
double g2_covariance_form(const Eigen::Ref<const Eigen::MatrixXd>& c, double denom_tol = 1e-12);

/// <sz_1 sz_N> via Wick.
double zz_ends(const Eigen::Ref<const Eigen::MatrixXd>& c);

struct NessObservables {
  double sz_left = 0.0;
  double sz_right = 0.0;
  double g2 = 0.0;
  // raw entries, zero-based (0,1), (2N-2,2N-1), (0,2N-2), (0,2N-1), (1,2N-2), (1,2N-1)
  double c_left = 0.0;
  double c_right = 0.0;
  double c_0_m2 = 0.0;
  double c_0_m1 = 0.0;
  double c_1_m2 = 0.0;
  double c_1_m1 = 0.0;
};

/// Needs N >= 2. Throws UndefinedCorrelator like g2_end_to_end.
NessObservables evaluate_observables(const Eigen::Ref<const Eigen::MatrixXd>& c, double denom_tol = 1e-12);

}  // namespace ness
