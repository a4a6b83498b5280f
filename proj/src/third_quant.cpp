#include "ness/third_quant.hpp"

#include "ness/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <vector>

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>

namespace ness {

namespace {

using cd = std::complex<double>;

void add_end_block(Eigen::MatrixXcd& m, int first, const EndRates& r) {
  const cd i(0.0, 1.0);
  m(first, first) += r.plus / 4.0;
  m(first + 1, first + 1) += r.plus / 4.0;
  m(first, first + 1) += -i * r.minus / 4.0;
  m(first + 1, first) += i * r.minus / 4.0;
}

Eigen::MatrixXd antisymmetrized(const Eigen::MatrixXd& c) { return 0.5 * (c - c.transpose()); }

CorrelationMatrix finish(const DriftPair& drift, Eigen::MatrixXd c, double abscissa, LyapunovRoute route) {
  CorrelationMatrix out;
  out.c = antisymmetrized(c);
  out.residual = residual(drift, out.c);
  out.spectral_abscissa = abscissa;
  out.y_norm = drift.y.norm();
  out.route = route;
  return out;
}

bool within_tolerance(const CorrelationMatrix& c, const SolverTolerances& tol) {
  return std::isfinite(c.residual) && c.residual <= tol.residual * std::max(c.y_norm, 1.0);
}

struct Block {
  Eigen::Index start, size;
};

std::vector<Block> schur_blocks(const Eigen::MatrixXd& t) {
  std::vector<Block> blocks;
  const Eigen::Index n = t.rows();
  for (Eigen::Index i = 0; i < n;) {
    const Eigen::Index size = (i + 1 < n && t(i + 1, i) != 0.0) ? 2 : 1;
    blocks.push_back({i, size});
    i += size;
  }
  return blocks;
}

double schur_abscissa(const Eigen::MatrixXd& t) {
  double a = -std::numeric_limits<double>::infinity();
  for (const Block& b : schur_blocks(t)) {
    a = std::max(a, b.size == 1 ? t(b.start, b.start) : 0.5 * (t(b.start, b.start) + t(b.start + 1, b.start + 1)));
  }
  return a;
}

std::string describe(cd z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

BathMatrix build_bath_matrix(const BathSpec& bath, int n_sites) {
  if (n_sites < 1) throw SpecificationError("bath matrix needs at least one site");
  bath.validate();
  BathMatrix out{Eigen::MatrixXcd::Zero(2 * n_sites, 2 * n_sites)};
  add_end_block(out.m, 0, bath.left());
  add_end_block(out.m, 2 * n_sites - 2, bath.right());
  return out;
}

DriftPair build_drift(const MajoranaForm& form, const BathMatrix& bath) {
  const Eigen::Index dim = form.a.rows();
  if (form.a.cols() != dim || bath.m.rows() != dim || bath.m.cols() != dim || dim != 2 * form.n_sites) {
    throw SpecificationError("Majorana form and bath matrix dimensions disagree");
  }
  // X = -2(2iH + M + M^T) with H = iA; Y = 4i(M - M^T). M Hermitian makes both real.
  DriftPair d;
  d.x = 4.0 * form.a - 4.0 * bath.m.real();
  d.y = -8.0 * bath.m.imag();
  return d;
}

double residual(const DriftPair& drift, const Eigen::MatrixXd& c) {
  return (drift.x * c + c * drift.x.transpose() - drift.y).norm();
}

double max_singular_value(const Eigen::MatrixXd& c) {
  if (c.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c);
  return svd.singularValues()(0);
}

CorrelationMatrix solve_ness_vectorized(const DriftPair& drift) {
  const Eigen::Index n = drift.x.rows();
  const Eigen::Index m = n * (n - 1) / 2;
  // Unknowns c_pq (p < q); equation (i, j), i < j, of X C + C X^T = Y.
  Eigen::MatrixXi index = Eigen::MatrixXi::Constant(n, n, -1);
  Eigen::Index counter = 0;
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = p + 1; q < n; ++q) index(p, q) = static_cast<int>(counter++);

  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd rhs(m);
  const Eigen::MatrixXd& x = drift.x;
  // The left-hand side is antisymmetric; only entries above the diagonal are kept as equations.
  auto add = [&](Eigen::Index a, Eigen::Index b, Eigen::Index col, double value) {
    if (a < b) k(index(a, b), col) += value;
  };
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = p + 1; q < n; ++q) {
      const Eigen::Index col = index(p, q);
      for (Eigen::Index i = 0; i < n; ++i) {
        add(i, q, col, x(i, p));
        add(i, p, col, -x(i, q));
        add(p, i, col, x(i, q));
        add(q, i, col, -x(i, p));
      }
      rhs(col) = drift.y(p, q);
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(k);
  const double rcond = lu.rcond();
  if (!(rcond > std::numeric_limits<double>::epsilon())) {
    throw NumericalError("vectorised Lyapunov system is singular (rcond " + std::to_string(rcond) + ")");
  }
  const Eigen::VectorXd sol = lu.solve(rhs);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = p + 1; q < n; ++q) {
      c(p, q) = sol(index(p, q));
      c(q, p) = -sol(index(p, q));
    }
  }
  double abscissa = std::numeric_limits<double>::quiet_NaN();
  Eigen::EigenSolver<Eigen::MatrixXd> es(x, false);
  if (es.info() == Eigen::Success) abscissa = es.eigenvalues().real().maxCoeff();
  return finish(drift, std::move(c), abscissa, LyapunovRoute::Vectorized);
}

CorrelationMatrix solve_ness_schur(const DriftPair& drift) {
  const Eigen::Index n = drift.x.rows();
  Eigen::RealSchur<Eigen::MatrixXd> schur(drift.x);
  if (schur.info() != Eigen::Success) throw NumericalError("real Schur decomposition of the drift matrix failed");
  const Eigen::MatrixXd& t = schur.matrixT();
  const Eigen::MatrixXd& u = schur.matrixU();
  const Eigen::MatrixXd w = u.transpose() * drift.y * u;
  const std::vector<Block> blocks = schur_blocks(t);

  // T Z + Z T^T = W, block (I, J) from the bottom-right corner upwards.
  using Small = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
  using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
  for (auto bi = blocks.rbegin(); bi != blocks.rend(); ++bi) {
    const Eigen::Index i0 = bi->start, p = bi->size, ie = i0 + p;
    for (auto bj = blocks.rbegin(); bj != blocks.rend(); ++bj) {
      const Eigen::Index j0 = bj->start, q = bj->size, je = j0 + q;
      Eigen::MatrixXd r = w.block(i0, j0, p, q);
      if (ie < n) r.noalias() -= t.block(i0, ie, p, n - ie) * z.block(ie, j0, n - ie, q);
      if (je < n) r.noalias() -= z.block(i0, je, p, n - je) * t.block(j0, je, q, n - je).transpose();

      // column-major vec: (I_q (x) T_II + T_JJ (x) I_p) vec Z_IJ = vec R
      Small k = Small::Zero(p * q, p * q);
      for (Eigen::Index b = 0; b < q; ++b) {
        k.block(b * p, b * p, p, p) += t.block(i0, i0, p, p);
        for (Eigen::Index a = 0; a < q; ++a)
          k.block(b * p, a * p, p, p) += t(j0 + b, j0 + a) * Eigen::MatrixXd::Identity(p, p);
      }
      Eigen::FullPivLU<Small> lu(k);
      if (!lu.isInvertible()) throw NumericalError("Schur block of the Lyapunov operator is singular");
      SmallVec rv(p * q);
      for (Eigen::Index b = 0; b < q; ++b) rv.segment(b * p, p) = r.col(b);
      const SmallVec sol = lu.solve(rv);
      for (Eigen::Index b = 0; b < q; ++b) z.block(i0, j0 + b, p, 1) = sol.segment(b * p, p);
    }
  }
  Eigen::MatrixXd c = u * z * u.transpose();
  return finish(drift, std::move(c), schur_abscissa(t), LyapunovRoute::Schur);
}

CorrelationMatrix solve_ness(const DriftPair& drift, const SolverTolerances& tol) {
  const Eigen::Index n = drift.x.rows();
  if (n == 0 || drift.x.cols() != n || drift.y.rows() != n || drift.y.cols() != n) {
    throw SpecificationError("drift matrices must be square and of equal size");
  }

  Eigen::EigenSolver<Eigen::MatrixXd> es(drift.x, true);
  const bool have_eigen = es.info() == Eigen::Success;
  double abscissa = 0.0;
  if (have_eigen) {
    const Eigen::VectorXcd lambda = es.eigenvalues();
    Eigen::Index worst = 0;
    abscissa = lambda.real().maxCoeff(&worst);
    if (abscissa > -tol.stability) {
      throw NoUniqueNess("drift matrix is not Hurwitz (eigenvalue " + describe(lambda(worst)) + "): no unique NESS",
                         lambda(worst));
    }

    double min_pair = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) min_pair = std::min(min_pair, std::abs(lambda(i) + lambda(j)));

    if (min_pair >= tol.degeneracy * drift.x.norm()) {
      const Eigen::MatrixXcd v = es.eigenvectors();
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu(v);
      const Eigen::MatrixXcd v_inv = lu.inverse();
      Eigen::MatrixXcd transformed = v_inv * drift.y.cast<std::complex<double>>() * v_inv.transpose();
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) transformed(i, j) /= lambda(i) + lambda(j);
      Eigen::MatrixXd c = (v * transformed * v.transpose()).real();
      CorrelationMatrix out = finish(drift, std::move(c), abscissa, LyapunovRoute::Eigen);
      if (within_tolerance(out, tol)) return out;
    }
  }

  double best = std::numeric_limits<double>::quiet_NaN();
  try {
    CorrelationMatrix out = solve_ness_schur(drift);
    if (!have_eigen && out.spectral_abscissa > -tol.stability) {
      throw NoUniqueNess("drift matrix is not Hurwitz (spectral abscissa " + std::to_string(out.spectral_abscissa) +
                             "): no unique NESS",
                         cd(out.spectral_abscissa, 0.0));
    }
    if (have_eigen) out.spectral_abscissa = abscissa;
    if (within_tolerance(out, tol)) return out;
    best = out.residual;
  } catch (const NumericalError&) {
  }

  if (n * (n - 1) / 2 <= kMaxVectorizedUnknowns) {
    CorrelationMatrix out = solve_ness_vectorized(drift);
    if (have_eigen) out.spectral_abscissa = abscissa;
    if (within_tolerance(out, tol)) return out;
    best = std::isnan(best) ? out.residual : std::min(best, out.residual);
  }
  throw NumericalError("Lyapunov solve missed the residual tolerance (residual " + std::to_string(best) + ")");
}

CorrelationMatrix solve_chain(const ChainSpec& chain, const BathSpec& bath, const SolverTolerances& tol) {
  const MajoranaForm form = build_majorana(chain);
  return solve_ness(build_drift(form, build_bath_matrix(bath, form.n_sites)), tol);
}

}  // namespace ness
