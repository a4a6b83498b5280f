#pragma once

// Brute-force Lindblad solver on the full 2^N Hilbert space.
//
// Basis: tensor product with site 0 most significant; within a site, index 0
// is spin up (sz = +1). Vectorisation is row-major: rho_ab sits at a * d + b.
// Memory: the dense reduced solve stores (4^N / 2)^2 complex numbers, 64 MB at
// N = 6 and 1 GB at N = 7.

#include "ness/model.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <vector>

namespace ness {

inline constexpr int kMaxHamiltonianSites = 10;
inline constexpr int kMaxLiouvillianSites = 7;

/// Dense spin Hamiltonian of either model. Throws ResourceError for N > 10.
Eigen::MatrixXcd build_spin_hamiltonian(const ChainSpec& spec);

struct Liouvillian {
  int n_sites = 0;
  Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor> l;
};

/// L rho = -i[H, rho] + sum_mu (2 L_mu rho L_mu^+ - {L_mu^+ L_mu, rho}) with
/// jump operators sqrt(Gamma_down) s^-, sqrt(Gamma_up) s^+ on the first and last site.
/// Throws ResourceError for N > 7 and SpecificationError if h is not 2^N square.
Liouvillian build_liouvillian(const Eigen::MatrixXcd& h, const BathSpec& bath);

struct DenseNess {
  int n_sites = 0;
  Eigen::MatrixXcd rho;
  double gap = 0.0;                  // smallest singular value of the trace-constrained real block
  double liouvillian_residual = 0.0;  // ||L vec(rho)||
};

/// Stationary state among Hermitian rho in the even-parity block (rho_ab with
/// equal parity of a and b), which contains the NESS. The real coordinates
/// rho_aa, Re rho_ab, Im rho_ab (a < b) give a real system; one row is replaced
/// by the trace condition and the system solved by dense LU. Throws
/// DegenerateNess if the gap is below 1e-10.
DenseNess solve_dense_ness(const Liouvillian& l);

/// Convenience: Hamiltonian, Liouvillian and solve.
DenseNess solve_dense_chain(const ChainSpec& chain, const BathSpec& bath);

/// All singular values of the full Liouvillian, ascending. N <= 4.
std::vector<double> liouvillian_singular_values(const Liouvillian& l);

struct OracleObservables {
  std::vector<double> sz;  // per site
  double zz_ends = 0.0;    // <sz_1 sz_N>
  double g2 = 0.0;

  double sz_left() const { return sz.front(); }
  double sz_right() const { return sz.back(); }
};

/// g2 from the sz covariance of the two end spins, evaluated directly on rho.
/// Throws UndefinedCorrelator when (1 + sz_1)(1 + sz_N) < denom_tol.
OracleObservables oracle_observables(const DenseNess& ness, double denom_tol = 1e-12);

/// Pauli operator on one site of an n-site register: which = 'x', 'y' or 'z'.
Eigen::MatrixXcd pauli(int n_sites, int site, char which);

/// Majorana operator w_index (zero-based): w_{2i} = g_i S_i sx_i, w_{2i+1} = g_i S_i sy_i
/// with string S_i = prod_{j<i} (-sz_j) and gauge g_i = (-1)^i.
Eigen::MatrixXcd majorana_operator(int n_sites, int index);

/// C_jk = (i/2) tr([w_j, w_k] rho).
Eigen::MatrixXd oracle_correlation_matrix(const DenseNess& ness);

}  // namespace ness
