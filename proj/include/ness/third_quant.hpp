#pragma once

// Third quantisation of the boundary-driven chain: bath matrix M, drift
// matrices X and Y, and the stationary Lyapunov equation X C + C X^T = Y for
// the Majorana correlation matrix C_jk = (i/2) tr([w_j, w_k] rho).

#include "ness/model.hpp"

#include <Eigen/Dense>

namespace ness {

/// Config-overridable numerical thresholds of the NESS solver.
struct SolverTolerances {
  double stability = 1e-10;   // required margin: max Re eig(X) <= -stability
  double residual = 1e-10;    // relative to max(||Y||_F, 1)
  double degeneracy = 1e-8;   // relative to ||X||_F; smaller |l_i + l_j| triggers the fallback

  bool operator==(const SolverTolerances&) const = default;
};

/// Hermitian 2N x 2N matrix sum_mu l_mu (x) conj(l_mu); nonzero only in the two end blocks.
struct BathMatrix {
  Eigen::MatrixXcd m;
};

struct DriftPair {
  Eigen::MatrixXd x;  // 4A - 4 Re M
  Eigen::MatrixXd y;  // -8 Im M, antisymmetric
};

enum class LyapunovRoute { Eigen, Schur, Vectorized };

struct CorrelationMatrix {
  Eigen::MatrixXd c;
  double residual = 0.0;           // ||X C + C X^T - Y||_F
  double spectral_abscissa = 0.0;  // max Re eig(X)
  double y_norm = 0.0;             // ||Y||_F, the residual scale
  LyapunovRoute route = LyapunovRoute::Eigen;

  int n_sites() const { return static_cast<int>(c.rows() / 2); }
};

BathMatrix build_bath_matrix(const BathSpec& bath, int n_sites);

/// Throws SpecificationError if the dimensions of form and bath disagree.
DriftPair build_drift(const MajoranaForm& form, const BathMatrix& bath);

/// Largest number of antisymmetric unknowns N(2N-1) the dense vectorised fallback accepts (N <= 28).
inline constexpr long kMaxVectorizedUnknowns = 1600;

/// Stationary solution of the Lyapunov equation.
///
/// Uses the eigen-decomposition X = V L V^{-1}. When eigenvalue pairs nearly
/// cancel or the eigen route misses the residual tolerance it falls back to
/// the linear system (I (x) X + X (x) I) vec C = vec Y, first by real-Schur
/// back substitution and then, if that also misses and the size allows, by
/// dense LU. Throws NoUniqueNess when X is not Hurwitz and NumericalError when
/// no route meets the residual tolerance.
CorrelationMatrix solve_ness(const DriftPair& drift, const SolverTolerances& tol = {});

/// Dense LU on the antisymmetric unknowns only. Exposed for cross-checks.
CorrelationMatrix solve_ness_vectorized(const DriftPair& drift);

/// Bartels-Stewart: X = U T U^T with T quasi-triangular, block back substitution for U^T C U.
CorrelationMatrix solve_ness_schur(const DriftPair& drift);

/// Frobenius norm of X C + C X^T - Y.
double residual(const DriftPair& drift, const Eigen::MatrixXd& c);

/// Largest singular value of C; physical states satisfy <= 1.
double max_singular_value(const Eigen::MatrixXd& c);

/// Chain + bath -> Majorana form -> drift -> NESS.
CorrelationMatrix solve_chain(const ChainSpec& chain, const BathSpec& bath, const SolverTolerances& tol = {});

}  // namespace ness
