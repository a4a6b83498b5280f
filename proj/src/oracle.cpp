#include "ness/oracle.hpp"

#include "ness/error.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

namespace ness {

namespace {

using cd = std::complex<double>;
using Triplets = std::vector<Eigen::Triplet<cd>>;

constexpr double kGapTol = 1e-10;
constexpr int kInverseIterations = 60;

// Site i of an n-site register lives in bit n-1-i; bit value 0 is spin up.
std::uint32_t site_mask(int n, int site) { return 1u << (n - 1 - site); }
bool down(std::uint32_t s, std::uint32_t mask) { return (s & mask) != 0; }
double z_value(std::uint32_t s, std::uint32_t mask) { return down(s, mask) ? -1.0 : 1.0; }
cd y_phase(std::uint32_t s, std::uint32_t mask) { return down(s, mask) ? cd(0.0, -1.0) : cd(0.0, 1.0); }
int parity(std::uint32_t s) { return std::popcount(s) & 1; }

void check_hamiltonian_size(int n) {
  if (n < 1) throw SpecificationError("spin Hamiltonian needs at least one site");
  if (n > kMaxHamiltonianSites) {
    throw ResourceError("dense spin Hamiltonian limited to " + std::to_string(kMaxHamiltonianSites) + " sites, got " +
                        std::to_string(n));
  }
}

int sites_from_dimension(Eigen::Index d) {
  if (d < 2 || (d & (d - 1)) != 0) throw SpecificationError("Hamiltonian dimension must be a power of two");
  return std::countr_zero(static_cast<std::uint64_t>(d));
}

}  // namespace

Eigen::MatrixXcd build_spin_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_sites();
  check_hamiltonian_size(n);
  const std::uint32_t dim = 1u << n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    for (int i = 0; i < n; ++i) h(s, s) += spec.h[i] * z_value(s, site_mask(n, i));
    for (int i = 0; i + 1 < n; ++i) {
      const std::uint32_t a = site_mask(n, i);
      const std::uint32_t b = site_mask(n, i + 1);
      const std::uint32_t t = s ^ a ^ b;
      if (spec.kind == ModelKind::Txy) {
        h(t, s) += spec.jx[i];
        h(t, s) += spec.jy[i] * y_phase(s, a) * y_phase(s, b);
      } else {
        h(t, s) += spec.b2[i];
      }
    }
    if (spec.kind == ModelKind::ThreeSpin) {
      for (int m = 0; m + 2 < n; ++m) {
        const std::uint32_t l = site_mask(n, m);
        const std::uint32_t r = site_mask(n, m + 2);
        h(s ^ l ^ r, s) += spec.b3[m] * z_value(s, site_mask(n, m + 1));
      }
    }
  }
  return h;
}

Liouvillian build_liouvillian(const Eigen::MatrixXcd& h, const BathSpec& bath) {
  if (h.rows() != h.cols()) throw SpecificationError("Hamiltonian must be square");
  const int n = sites_from_dimension(h.rows());
  if (n > kMaxLiouvillianSites) {
    throw ResourceError("Liouvillian limited to " + std::to_string(kMaxLiouvillianSites) + " sites, got " +
                        std::to_string(n));
  }
  bath.validate();
  const std::uint32_t d = 1u << n;
  const std::uint64_t big = static_cast<std::uint64_t>(d) * d;
  auto vec = [d](std::uint32_t a, std::uint32_t b) { return static_cast<Eigen::Index>(a) * d + b; };

  Triplets t;
  const cd mi(0.0, -1.0);
  for (std::uint32_t a = 0; a < d; ++a) {
    for (std::uint32_t c = 0; c < d; ++c) {
      const cd hac = h(a, c);
      if (hac == cd(0.0)) continue;
      // -i H rho and +i rho H
      for (std::uint32_t b = 0; b < d; ++b) t.emplace_back(vec(a, b), vec(c, b), mi * hac);
      for (std::uint32_t e = 0; e < d; ++e) t.emplace_back(vec(e, c), vec(e, a), -mi * hac);
    }
  }

  struct Jump {
    int site;
    double rate;
    bool lowering;
  };
  const EndRates left = bath.left();
  const EndRates right = bath.right();
  const Jump jumps[] = {{0, left.down, true}, {0, left.up, false}, {n - 1, right.down, true}, {n - 1, right.up, false}};
  for (const Jump& j : jumps) {
    if (j.rate == 0.0) continue;
    const std::uint32_t m = site_mask(n, j.site);
    // s^- maps up (bit 0) to down; s^+ the reverse. L^+ L projects onto the source state.
    auto is_source = [&](std::uint32_t s) { return down(s, m) != j.lowering; };
    for (std::uint32_t c = 0; c < d; ++c) {
      if (!is_source(c)) continue;
      for (std::uint32_t e = 0; e < d; ++e) {
        if (!is_source(e)) continue;
        t.emplace_back(vec(c ^ m, e ^ m), vec(c, e), 2.0 * j.rate);
      }
    }
    for (std::uint32_t a = 0; a < d; ++a) {
      for (std::uint32_t b = 0; b < d; ++b) {
        const double w = (is_source(a) ? 1.0 : 0.0) + (is_source(b) ? 1.0 : 0.0);
        if (w != 0.0) t.emplace_back(vec(a, b), vec(a, b), -j.rate * w);
      }
    }
  }
  Liouvillian out;
  out.n_sites = n;
  out.l.resize(static_cast<Eigen::Index>(big), static_cast<Eigen::Index>(big));
  out.l.setFromTriplets(t.begin(), t.end());
  out.l.makeCompressed();
  return out;
}

DenseNess solve_dense_ness(const Liouvillian& l) {
  const int n = l.n_sites;
  if (n < 1 || n > kMaxLiouvillianSites) throw ResourceError("dense NESS solve limited to 1..7 sites");
  const std::uint32_t d = 1u << n;
  if (l.l.rows() != static_cast<Eigen::Index>(d) * d) throw SpecificationError("Liouvillian dimension mismatch");

  // Real coordinates of a Hermitian even-parity rho: rho_aa, then Re and Im of rho_ab for a < b.
  struct Coord {
    std::uint32_t a, b;
  };
  std::vector<Eigen::Index> first(static_cast<std::size_t>(d) * d, -1);
  std::vector<Coord> coords;
  for (std::uint32_t a = 0; a < d; ++a) {
    for (std::uint32_t b = a; b < d; ++b) {
      if (parity(a) != parity(b)) continue;
      first[static_cast<std::size_t>(a) * d + b] = static_cast<Eigen::Index>(coords.size());
      coords.push_back({a, b});
      if (a != b) coords.push_back({a, b});
    }
  }
  const Eigen::Index m = static_cast<Eigen::Index>(coords.size());
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index r = 1; r < m; ++r) {
    const Coord out_c = coords[r];
    const bool imag_row = out_c.a != out_c.b && coords[r - 1].a == out_c.a && coords[r - 1].b == out_c.b;
    const Eigen::Index row = static_cast<Eigen::Index>(out_c.a) * d + out_c.b;
    for (decltype(l.l)::InnerIterator it(l.l, row); it; ++it) {
      const auto a = static_cast<std::uint32_t>(it.col() / d);
      const auto b = static_cast<std::uint32_t>(it.col() % d);
      const std::uint32_t lo = std::min(a, b), hi = std::max(a, b);
      const Eigen::Index c = first[static_cast<std::size_t>(lo) * d + hi];
      if (c < 0) throw NumericalError("Liouvillian couples the even-parity block to the odd block");
      const cd v = it.value();
      const double part = imag_row ? v.imag() : v.real();
      k(r, c) += part;
      if (a == b) continue;
      // rho_ab = x_re + i x_im for a < b and its conjugate for a > b
      const cd w = a < b ? cd(0, 1) * v : cd(0, -1) * v;
      k(r, c + 1) += imag_row ? w.imag() : w.real();
    }
  }
  // Row of Re rho_00 replaced by tr(rho) = 1; trace preservation makes it redundant.
  k.row(0).setZero();
  for (std::uint32_t a = 0; a < d; ++a) k(0, first[static_cast<std::size_t>(a) * d + a]) = 1.0;

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(k);
  const Eigen::MatrixXd& f = lu.matrixLU();
  const auto solve_transposed = [&](const Eigen::VectorXd& rhs) {
    Eigen::VectorXd w = f.transpose().triangularView<Eigen::Lower>().solve(rhs);
    f.transpose().triangularView<Eigen::UnitUpper>().solveInPlace(w);
    return Eigen::VectorXd(lu.permutationP().transpose() * w);
  };

  // Smallest singular value by inverse iteration on K^T K.
  std::mt19937_64 gen(12345);
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(m);
  for (Eigen::Index i = 0; i < m; ++i) x(i) = normal(gen);
  x.normalize();
  double inv_sq = 0.0;
  for (int it = 0; it < kInverseIterations; ++it) {
    const Eigen::VectorXd z = solve_transposed(lu.solve(x));
    inv_sq = z.norm();
    if (!std::isfinite(inv_sq) || inv_sq == 0.0) {
      inv_sq = std::numeric_limits<double>::infinity();
      break;
    }
    x = z / inv_sq;
  }
  DenseNess out;
  out.n_sites = n;
  out.gap = std::isfinite(inv_sq) ? 1.0 / std::sqrt(inv_sq) : 0.0;
  if (!(out.gap >= kGapTol)) {
    throw DegenerateNess("stationary state is not unique (gap " + std::to_string(out.gap) + ")");
  }

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(0) = 1.0;
  const Eigen::VectorXd v = lu.solve(rhs);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index r = 0; r < m; ++r) {
    const Coord c = coords[r];
    if (c.a == c.b) {
      rho(c.a, c.a) = v(r);
    } else {
      rho(c.a, c.b) = cd(v(r), v(r + 1));
      rho(c.b, c.a) = cd(v(r), -v(r + 1));
      ++r;
    }
  }
  rho /= rho.trace().real();
  out.rho = rho;

  Eigen::VectorXcd flat(static_cast<Eigen::Index>(d) * d);
  for (std::uint32_t a = 0; a < d; ++a)
    for (std::uint32_t b = 0; b < d; ++b) flat(static_cast<Eigen::Index>(a) * d + b) = rho(a, b);
  out.liouvillian_residual = (l.l * flat).norm();
  return out;
}

DenseNess solve_dense_chain(const ChainSpec& chain, const BathSpec& bath) {
  return solve_dense_ness(build_liouvillian(build_spin_hamiltonian(chain), bath));
}

std::vector<double> liouvillian_singular_values(const Liouvillian& l) {
  if (l.n_sites > 4) throw ResourceError("exact Liouvillian SVD limited to 4 sites");
  const Eigen::MatrixXcd dense = Eigen::MatrixXcd(l.l);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(dense);
  const Eigen::VectorXd s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end());
  return out;
}

OracleObservables oracle_observables(const DenseNess& ness, double denom_tol) {
  const int n = ness.n_sites;
  const std::uint32_t d = 1u << n;
  if (ness.rho.rows() != static_cast<Eigen::Index>(d)) throw SpecificationError("density matrix dimension mismatch");
  OracleObservables o;
  o.sz.assign(n, 0.0);
  const std::uint32_t first = site_mask(n, 0);
  const std::uint32_t last = site_mask(n, n - 1);
  for (std::uint32_t s = 0; s < d; ++s) {
    const double p = ness.rho(s, s).real();
    for (int i = 0; i < n; ++i) o.sz[i] += p * z_value(s, site_mask(n, i));
    o.zz_ends += p * z_value(s, first) * z_value(s, last);
  }
  const double denom = (1.0 + o.sz.front()) * (1.0 + o.sz.back());
  if (!(denom >= denom_tol)) {
    throw UndefinedCorrelator("oracle g2 denominator " + std::to_string(denom) + " below tolerance");
  }
  o.g2 = 1.0 + (o.zz_ends - o.sz.front() * o.sz.back()) / denom;
  return o;
}

Eigen::MatrixXcd pauli(int n_sites, int site, char which) {
  check_hamiltonian_size(n_sites);
  if (site < 0 || site >= n_sites) throw SpecificationError("site out of range");
  const std::uint32_t d = 1u << n_sites;
  const std::uint32_t m = site_mask(n_sites, site);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d, d);
  for (std::uint32_t s = 0; s < d; ++s) {
    switch (which) {
      case 'x':
        p(s ^ m, s) = 1.0;
        break;
      case 'y':
        p(s ^ m, s) = y_phase(s, m);
        break;
      case 'z':
        p(s, s) = z_value(s, m);
        break;
      default:
        throw SpecificationError(std::string("unknown Pauli operator '") + which + "'");
    }
  }
  return p;
}

Eigen::MatrixXcd majorana_operator(int n_sites, int index) {
  check_hamiltonian_size(n_sites);
  if (index < 0 || index >= 2 * n_sites) throw SpecificationError("Majorana index out of range");
  const int site = index / 2;
  const std::uint32_t d = 1u << n_sites;
  const std::uint32_t m = site_mask(n_sites, site);
  const double gauge = site % 2 == 0 ? 1.0 : -1.0;
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(d, d);
  for (std::uint32_t s = 0; s < d; ++s) {
    double string = gauge;
    for (int j = 0; j < site; ++j) string *= -z_value(s, site_mask(n_sites, j));
    w(s ^ m, s) = index % 2 == 0 ? cd(string) : string * y_phase(s, m);
  }
  return w;
}

Eigen::MatrixXd oracle_correlation_matrix(const DenseNess& ness) {
  const int n = ness.n_sites;
  std::vector<Eigen::MatrixXcd> w;
  w.reserve(2 * n);
  for (int j = 0; j < 2 * n; ++j) w.push_back(majorana_operator(n, j));
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < 2 * n; ++j) {
    for (int k = j + 1; k < 2 * n; ++k) {
      const Eigen::MatrixXcd comm = w[j] * w[k] - w[k] * w[j];
      // (i/2) tr(comm rho); comm is anti-Hermitian so the trace is imaginary.
      const cd tr = comm.cwiseProduct(ness.rho.transpose()).sum();
      c(j, k) = (cd(0.0, 0.5) * tr).real();
      c(k, j) = -c(j, k);
    }
  }
  return c;
}

}  // namespace ness
