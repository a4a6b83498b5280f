#pragma once

// Chain and bath descriptions plus the quadratic Majorana form of the
// transverse-field XY (TXY) and three-spin-interaction (3SI) Hamiltonians.
//
// Majorana convention: w_{2i-1} = c_i^+ + c_i, w_{2i} = -i (c_i^+ - c_i), and the
// Hamiltonian is H = w^T (iA) w with A real antisymmetric. Indices in code are
// zero-based, so w_1 lives at index 0.

#include <Eigen/Dense>

#include <string_view>
#include <vector>

namespace ness {

enum class ModelKind { Txy, ThreeSpin };

std::string_view to_string(ModelKind kind);
/// Accepts "txy" and "3si" (case-sensitive).
ModelKind parse_model_kind(std::string_view text);

/// Open chain with site-resolved couplings.
///
/// TXY: H = sum h_i sz_i + sum jx_i sx_i sx_{i+1} + sum jy_i sy_i sy_{i+1}.
/// 3SI: H = sum h_i sz_i + sum b2_i sx_i sx_{i+1} + sum b3_m sx_m sz_{m+1} sx_{m+2},
///      i.e. b3[m] is centred on (zero-based) site m + 1.
struct ChainSpec {
  ModelKind kind = ModelKind::Txy;
  std::vector<double> h;
  std::vector<double> jx;
  std::vector<double> jy;
  std::vector<double> b2;
  std::vector<double> b3;

  int n_sites() const { return static_cast<int>(h.size()); }

  /// Throws SpecificationError on wrong lengths, non-finite entries or arrays of the inactive kind.
  void validate() const;

  static ChainSpec uniform_txy(int n_sites, double h, double jx, double jy);
  /// Uniform 3SI chain J (sz + lambda1 sx sx + lambda2 sx sz sx).
  static ChainSpec uniform_3si(int n_sites, double j, double lambda1, double lambda2);

  bool operator==(const ChainSpec&) const = default;
};

/// Rates of one dissipative end.
struct EndRates {
  double down;   // Gamma (n + 1)
  double up;     // Gamma n
  double plus;   // up + down
  double minus;  // up - down
};

EndRates end_rates(double gamma, double n_th);

/// Thermal baths attached to the first and last spin.
struct BathSpec {
  double gamma_left = 0.0;
  double gamma_right = 0.0;
  double n_left = 0.0;
  double n_right = 0.0;

  static BathSpec symmetric(double gamma, double n_th) { return {gamma, gamma, n_th, n_th}; }

  EndRates left() const { return end_rates(gamma_left, n_left); }
  EndRates right() const { return end_rates(gamma_right, n_right); }

  void validate() const;

  bool operator==(const BathSpec&) const = default;
};

struct MajoranaForm {
  int n_sites = 0;
  Eigen::MatrixXd a;  // 2N x 2N, antisymmetric
};

MajoranaForm build_txy_majorana(const ChainSpec& spec);
MajoranaForm build_3si_majorana(const ChainSpec& spec);
/// Dispatches on spec.kind.
MajoranaForm build_majorana(const ChainSpec& spec);

struct EndFields {
  double left = 0.0;
  double right = 0.0;
};

/// Surrounds `bulk` with two weakly coupled auxiliary spins.
///
/// End bonds (and, for 3SI, the three-spin terms that touch an auxiliary
/// site) are `end_bond_scale` times the adjacent bulk coupling.
ChainSpec attach_auxiliary(const ChainSpec& bulk, double end_bond_scale = 0.02, EndFields end_fields = {});

struct ReducedParams {
  double gamma;  // anisotropy (jx - jy) / (jx + jy)
  double h_bar;  // h / (jx + jy)
};

struct TxyCouplings {
  double jx;
  double jy;
  double h;
};

ReducedParams reduced_params(double jx, double jy, double h);
/// Inverse of reduced_params for a given jx + jy.
TxyCouplings from_reduced(double gamma, double h_bar, double scale);

struct DualParams {
  double lambda1;
  double lambda2;
};

/// TXY couplings -> 3SI couplings of the dual chain: lambda1 = h/jx, lambda2 = -jy/jx.
DualParams duality_map(double h, double jx, double jy);

}  // namespace ness
