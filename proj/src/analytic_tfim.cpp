#include "ness/analytic_tfim.hpp"

#include "ness/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ness {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxBisection = 200;
constexpr double kClampTol = 1e-12;
constexpr double kWeightRootTol = 1e-9;

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

double clamp_radicand(double r) {
  if (r >= 0.0) return r;
  if (r > -kClampTol) return 0.0;
  throw NumericalError("negative energy radicand " + std::to_string(r) + ": wrong root branch");
}

// f(a) and f(b) must differ in sign; returns the bracketed root to machine precision.
// fa overrides f(a) when f vanishes at a itself.
template <class F>
double bisect(F f, double a, double b, double fa) {
  for (int it = 0; it < kMaxBisection; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

template <class F>
double bisect(F f, double a, double b) {
  return bisect(f, a, b, f(a));
}

// r(kappa) = sinh(kappa N) / sinh(kappa (N+1)) without overflow.
double sinh_ratio(int n, double kappa) {
  if (kappa == 0.0) return static_cast<double>(n) / (n + 1);
  if (std::isinf(kappa)) return 0.0;
  return std::exp(-kappa) * std::expm1(-2.0 * kappa * n) / std::expm1(-2.0 * kappa * (n + 1));
}

// sinh(kappa m) / sinh(kappa N) for m = 1..N; a unit spike at m = N when kappa is infinite.
std::vector<double> sinh_profile(int n, double kappa) {
  std::vector<double> v(n);
  for (int m = 1; m <= n; ++m) {
    if (std::isinf(kappa)) {
      v[m - 1] = m == n ? 1.0 : 0.0;
    } else {
      v[m - 1] = std::exp(kappa * (m - n)) * std::expm1(-2.0 * kappa * m) / std::expm1(-2.0 * kappa * n);
    }
  }
  return v;
}

double normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  const double inv = 1.0 / std::sqrt(s);
  for (double& x : v) x *= inv;
  return inv;
}

double kappa_energy(int n, double xi, double jx, double kappa) {
  if (std::isinf(kappa)) return 0.0;
  // 1 + xi^2 - 2|xi| cosh kappa = (1 - |xi| e^kappa)(1 - |xi| e^-kappa), first factor written without cancellation.
  const double first = std::exp(-2.0 * kappa * n) * std::expm1(-2.0 * kappa) / std::expm1(-2.0 * kappa * (n + 1));
  const double second = 1.0 - std::abs(xi) * std::exp(-kappa);
  return 2.0 * std::abs(jx) * std::sqrt(clamp_radicand(first * second));
}

}  // namespace

std::vector<double> TfimSpectrum::all_energies() const {
  std::vector<double> out = energies;
  if (kappa) out.push_back(epsilon_kappa);
  std::sort(out.begin(), out.end());
  return out;
}

double root_residual(int n_sites, double xi, double k) {
  return std::abs(std::sin(k * n_sites) / std::sin(k * (n_sites + 1)) - xi);
}

double kappa_residual(int n_sites, double xi, double kappa) {
  return std::abs(sinh_ratio(n_sites, kappa) - std::abs(xi));
}

double tfim_energy(double xi, double jx, double k) {
  return 2.0 * std::abs(jx) * std::sqrt(clamp_radicand(1.0 + xi * xi - 2.0 * xi * std::cos(k)));
}

TfimSpectrum solve_k_spectrum(int n_sites, double h, double jx) {
  if (n_sites < 1) throw SpecificationError("TFIM spectrum needs at least one site");
  if (jx == 0.0 || !std::isfinite(jx) || !std::isfinite(h)) {
    throw SpecificationError("TFIM spectrum needs finite h and jx != 0");
  }
  const int n = n_sites;
  TfimSpectrum s;
  s.n_sites = n;
  s.h = h;
  s.jx = jx;
  s.xi = -h / jx;
  const double xi = s.xi;
  const double threshold = static_cast<double>(n) / (n + 1);
  const double step = kPi / (n + 1);

  auto f = [n, xi](double k) { return std::sin(k * n) - xi * std::sin(k * (n + 1)); };

  if (xi == threshold) {
    s.k_real.push_back(0.0);
  } else if (xi > threshold) {
    // f(0) = 0; its slope there is n - xi (n + 1) < 0
    s.k_real.push_back(bisect(f, 0.0, step, n - xi * (n + 1)));
  }
  for (int m = 1; m < n; ++m) s.k_real.push_back(bisect(f, m * step, (m + 1) * step));
  if (xi == -threshold) {
    s.k_real.push_back(kPi);
  } else if (xi < -threshold) {
    s.k_real.push_back(bisect(f, n * step, kPi));
  }

  const bool bound_state = std::abs(xi) < threshold;
  const std::size_t expected = bound_state ? static_cast<std::size_t>(n - 1) : static_cast<std::size_t>(n);
  if (s.k_real.size() != expected) {
    throw NumericalError("TFIM root search found " + std::to_string(s.k_real.size()) + " real roots, expected " +
                         std::to_string(expected));
  }

  for (double k : s.k_real) {
    s.energies.push_back(tfim_energy(xi, jx, k));
    s.weights.push_back(eval_weights(n, xi, jx, {RootBranch::Real, k}));
  }

  if (bound_state) {
    double kappa = std::numeric_limits<double>::infinity();
    if (xi != 0.0) {
      const double target = std::abs(xi);
      auto g = [n, target](double x) { return sinh_ratio(n, x) - target; };
      double hi = 1.0;
      while (g(hi) > 0.0) hi *= 2.0;
      kappa = bisect(g, 0.0, hi);
    }
    Momentum root{xi < 0.0 ? RootBranch::PiPlusImaginary : RootBranch::Imaginary, kappa};
    s.kappa = root;
    s.epsilon_kappa = kappa_energy(n, xi, jx, kappa);
    s.kappa_weights = eval_weights(n, xi, jx, root);
  }
  return s;
}

ModeWeights eval_weights(int n_sites, double xi, double jx, const Momentum& root) {
  const int n = n_sites;
  if (n < 1) throw SpecificationError("weights need at least one site");
  ModeWeights w;
  w.phi.resize(n);
  w.psi.resize(n);

  if (root.branch == RootBranch::Real) {
    const double k = root.value;
    if (!(k >= 0.0 && k <= kPi)) throw SpecificationError("real root must lie in [0, pi]");
    if (k == 0.0 || k == kPi) {
      // Limit of sin(k m) / sin(k) at the band edge.
      const double c = k == 0.0 ? 1.0 : -1.0;
      const double expected = c * static_cast<double>(n) / (n + 1);
      if (std::abs(xi - expected) > kWeightRootTol) throw SpecificationError("band-edge k is not a root for this xi");
      const double sgn = -sign_of(jx * std::pow(c, n));
      for (int j = 1; j <= n; ++j) {
        w.phi[j - 1] = (n + 1 - j) * std::pow(c, n - j);
        w.psi[j - 1] = sgn * j * std::pow(c, j - 1);
      }
      w.normalizer = normalize(w.phi);
      normalize(w.psi);
      return w;
    }
    if (root_residual(n, xi, k) > kWeightRootTol) {
      throw SpecificationError("k = " + std::to_string(k) + " is not a root of the TFIM quantisation condition");
    }
    const double a = 2.0 / std::sqrt(2.0 * n + 1.0 - std::sin(k * (2 * n + 1)) / std::sin(k));
    const double sgn = -sign_of(jx * std::sin(k) / std::sin(k * (n + 1)));
    for (int j = 1; j <= n; ++j) {
      w.phi[j - 1] = a * std::sin(k * (n + 1 - j));
      w.psi[j - 1] = sgn * a * std::sin(k * j);
    }
    w.normalizer = a;
    return w;
  }

  const double kappa = root.value;
  if (!(kappa > 0.0)) throw SpecificationError("kappa must be positive");
  if ((root.branch == RootBranch::Imaginary) != (xi >= 0.0)) {
    throw SpecificationError("branch of the complex root does not match the sign of xi");
  }
  if (std::isinf(kappa) ? xi != 0.0 : kappa_residual(n, xi, kappa) > kWeightRootTol) {
    throw SpecificationError("kappa = " + std::to_string(kappa) + " is not a root of the bound-state condition");
  }
  const std::vector<double> v = sinh_profile(n, kappa);
  if (root.branch == RootBranch::Imaginary) {
    const double sgn = -sign_of(jx);
    for (int j = 1; j <= n; ++j) {
      w.phi[j - 1] = v[n - j];
      w.psi[j - 1] = sgn * v[j - 1];
    }
  } else {
    const double sgn = -sign_of(jx * ((n % 2 == 0) ? 1.0 : -1.0));
    for (int j = 1; j <= n; ++j) {
      w.phi[j - 1] = ((j - 1) % 2 == 0 ? 1.0 : -1.0) * v[n - j];
      w.psi[j - 1] = sgn * ((j + n) % 2 == 0 ? 1.0 : -1.0) * v[j - 1];
    }
  }
  w.normalizer = normalize(w.phi);
  normalize(w.psi);
  return w;
}

RenormalizedCouplings renormalized_couplings(const TfimSpectrum& bulk, double j_end_left, double j_end_right) {
  if (!bulk.kappa || !bulk.kappa_weights) return {0.0, 0.0, false};
  const ModeWeights& w = *bulk.kappa_weights;
  return {w.phi.front() * j_end_left, w.psi.back() * j_end_right, true};
}

ToyModelParams ToyModelParams::from_bath(double j_bar, double epsilon_kappa, double gamma, double n_th) {
  const EndRates r = end_rates(gamma, n_th);
  return {j_bar, epsilon_kappa, r.plus, r.minus};
}

namespace {

void check_toy(const ToyModelParams& p) {
  if (!(p.gamma_minus <= 0.0)) throw SpecificationError("toy model needs gamma_minus <= 0");
  if (p.j_plus_sq() == 0.0) throw UndefinedCorrelator("toy model undefined for J+ = 0");
}

}  // namespace

double toy_sz(const ToyModelParams& p) {
  check_toy(p);
  const double jp2 = p.j_plus_sq();
  const double e2 = p.epsilon_kappa * p.epsilon_kappa;
  const double gp = p.gamma_plus;
  return p.gamma_minus * gp * (jp2 + e2) / (jp2 * jp2 + gp * gp * e2);
}

double toy_g2(const ToyModelParams& p) {
  check_toy(p);
  const double jp2 = p.j_plus_sq();
  const double e2 = p.epsilon_kappa * p.epsilon_kappa;
  const double gp = p.gamma_plus;
  const double gm = p.gamma_minus;
  const double j4 = p.j_bar * p.j_bar * p.j_bar * p.j_bar;
  const double d = jp2 * jp2 + gm * gp * jp2 + gp * (gp + gm) * e2;
  return 1.0 + 4.0 * gm * gm * j4 * e2 / (d * d);
}

ToyChain toy_chain(const ToyModelParams& p) {
  if (!(p.gamma_minus < 0.0)) throw SpecificationError("toy chain needs gamma_minus < 0");
  const double gamma = -p.gamma_minus;
  const double up = 0.5 * (p.gamma_plus + p.gamma_minus);
  if (up < 0.0) throw SpecificationError("toy chain needs gamma_plus >= -gamma_minus");
  ToyChain t;
  t.chain.kind = ModelKind::Txy;
  t.chain.h = {0.0, 0.5 * p.epsilon_kappa, 0.0};
  t.chain.jx = {p.j_bar, p.j_bar};
  t.chain.jy = {0.0, 0.0};
  t.bath = BathSpec::symmetric(gamma, up / gamma);
  return t;
}

}  // namespace ness
