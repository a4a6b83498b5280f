#pragma once

// Exact diagonalisation of the open uniform transverse-field Ising chain
// H = h sum sz_i + jx sum sx_i sx_{i+1}, and the closed-form three-qubit toy
// model of a weakly coupled auxiliary spin pair.

#include "ness/model.hpp"

#include <optional>
#include <vector>

namespace ness {

enum class RootBranch {
  Real,             // k in (0, pi)
  Imaginary,        // k = i kappa, xi > 0
  PiPlusImaginary,  // k = pi + i kappa, xi < 0
};

struct Momentum {
  RootBranch branch = RootBranch::Real;
  double value = 0.0;  // k for real roots, kappa otherwise (may be +inf when xi == 0)
};

/// Bogoliubov weights of one mode; phi multiplies w_{2j-1}, psi multiplies w_{2j}.
struct ModeWeights {
  std::vector<double> phi;
  std::vector<double> psi;
  double normalizer = 0.0;  // A_k for real roots, 1 / ||unnormalised sinh profile|| otherwise
};

struct TfimSpectrum {
  int n_sites = 0;
  double h = 0.0;
  double jx = 0.0;
  double xi = 0.0;                    // -h / jx
  std::vector<double> k_real;         // ascending, in [0, pi]
  std::vector<double> energies;       // eps_k for each entry of k_real
  std::vector<ModeWeights> weights;   // one per entry of k_real
  std::optional<Momentum> kappa;      // present iff |xi| < N / (N + 1)
  double epsilon_kappa = 0.0;         // splitting of the bound-state doublet (0 when kappa absent)
  std::optional<ModeWeights> kappa_weights;

  /// All N one-particle energies (real roots plus eps_kappa), ascending.
  std::vector<double> all_energies() const;
};

/// Root residual |sin(kN) / sin(k(N+1)) - xi| of a real root.
double root_residual(int n_sites, double xi, double k);
/// |r(kappa) - |xi|| with r = sinh(kappa N) / sinh(kappa (N+1)).
double kappa_residual(int n_sites, double xi, double kappa);

/// eps(k) = 2 |jx| sqrt(1 + xi^2 - 2 xi cos k) for real k.
double tfim_energy(double xi, double jx, double k);

/// Roots, energies and weights for the open TFIM with field h and bond jx.
/// Throws SpecificationError for jx == 0 or n_sites < 1 and NumericalError if
/// the root search does not produce the predicted number of roots.
TfimSpectrum solve_k_spectrum(int n_sites, double h, double jx);

/// Weights of a root produced by solve_k_spectrum. Throws SpecificationError for a non-root.
///
/// Real root: phi_j = A_k sin k(N+1-j), psi_j = -sign(jx sin k / sin k(N+1)) A_k sin kj.
/// Complex root: the hyperbolic continuation, renormalised to unit norm.
/// Paired as (phi on w_{2j-1}, psi on w_{2j}) these are singular vectors of the
/// Majorana form of the chain with field -h; the |weights| are those of field h.
ModeWeights eval_weights(int n_sites, double xi, double jx, const Momentum& root);

struct RenormalizedCouplings {
  double left = 0.0;
  double right = 0.0;
  bool coupled = false;  // false in the paramagnetic regime: no doublet to couple to
};

/// End couplings seen by the bulk doublet: left = phi_{kappa,1} j_left, right = psi_{kappa,N} j_right,
/// with N the bulk length.
RenormalizedCouplings renormalized_couplings(const TfimSpectrum& bulk, double j_end_left, double j_end_right);

struct ToyModelParams {
  double j_bar = 0.0;
  double epsilon_kappa = 0.0;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;

  double j_plus_sq() const { return 2.0 * j_bar * j_bar + gamma_plus * gamma_plus; }

  /// Equal baths with rate gamma and occupation n_th at both auxiliary spins.
  static ToyModelParams from_bath(double j_bar, double epsilon_kappa, double gamma, double n_th);
};

/// <sz> of either auxiliary spin. Throws UndefinedCorrelator when J+ = 0.
double toy_sz(const ToyModelParams& p);
/// End-to-end g2 of the toy model. Throws UndefinedCorrelator when J+ = 0.
double toy_g2(const ToyModelParams& p);

struct ToyChain {
  ChainSpec chain;
  BathSpec bath;
};

/// Three-site chain realising the toy model: h = (0, eps/2, 0), jx = (J, J), jy = 0.
/// Needs gamma_minus < 0.
ToyChain toy_chain(const ToyModelParams& p);

}  // namespace ness
