#include "ness/zero_modes.hpp"

#include "ness/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ness {

namespace {

constexpr double kOpenZeroThreshold = 1e-6;

void set_pair(Eigen::MatrixXd& a, int j, int k, double value) {
  a(j, k) += value;
  a(k, j) -= value;
}

int end_sites(int n, double fraction) { return std::max(1, static_cast<int>(std::ceil(fraction * n - 1e-9))); }

double end_weight(const std::vector<double>& amp, ModeEnd end, int width) {
  const int n = static_cast<int>(amp.size());
  double w = 0.0;
  for (int k = 0; k < width; ++k) {
    const double a = amp[end == ModeEnd::Left ? k : n - 1 - k];
    w += a * a;
  }
  return w;
}

// Least-squares slope of log amplitude against distance from the end, over the near half.
double decay_length(const std::vector<double>& amp, ModeEnd end) {
  const int n = static_cast<int>(amp.size());
  const double peak = *std::max_element(amp.begin(), amp.end());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int d = 0; d < (n + 1) / 2; ++d) {
    const double a = amp[end == ModeEnd::Left ? d : n - 1 - d];
    if (a <= 1e-10 * peak) continue;
    const double y = std::log(a);
    sx += d;
    sy += y;
    sxx += static_cast<double>(d) * d;
    sxy += d * y;
    ++count;
  }
  if (count < 2) return 0.0;
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  if (!(slope < 0.0)) return std::numeric_limits<double>::infinity();
  return -1.0 / slope;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  Eigen::VectorXd s = svd.singularValues();
  std::sort(s.data(), s.data() + s.size());
  return s;
}

}  // namespace

std::vector<double> site_amplitudes(const Eigen::VectorXd& v) {
  std::vector<double> amp(v.size() / 2);
  for (std::size_t i = 0; i < amp.size(); ++i) amp[i] = std::hypot(v(2 * i), v(2 * i + 1));
  return amp;
}

ZeroModeReport find_zero_modes(const MajoranaForm& form, const ZeroModeOptions& opt) {
  const Eigen::Index dim = form.a.rows();
  if (dim == 0 || form.a.cols() != dim) throw SpecificationError("Majorana form must be square and nonempty");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(form.a, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();  // descending
  const double smax = s(0);
  if (smax == 0.0) throw SpecificationError("zero-mode search needs a nonzero Majorana form");

  ZeroModeReport rep;
  rep.sigma_max = smax;
  for (Eigen::Index i = dim - 1; i >= 0 && rep.smallest_singular_values.size() < 8; --i) {
    rep.smallest_singular_values.push_back(s(i) / smax);
  }

  int zeros = 0;
  while (zeros < dim && s(dim - 1 - zeros) < opt.rel_threshold * smax) ++zeros;
  const double next = zeros < dim ? s(dim - 1 - zeros) / smax : 0.0;
  rep.gapless = zeros % 2 != 0 || next < opt.gapless_ratio;

  if (zeros > 0) {
    const Eigen::MatrixXd z = svd.matrixV().rightCols(zeros);
    Eigen::VectorXd position(dim);
    for (Eigen::Index j = 0; j < dim; ++j) position(j) = static_cast<double>(j / 2);
    const Eigen::MatrixXd projected = z.transpose() * position.asDiagonal() * z;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(projected);
    const int n = form.n_sites;
    const int width = end_sites(n, opt.end_fraction);
    for (int m = 0; m < zeros; ++m) {
      ZeroMode mode;
      mode.vector = z * es.eigenvectors().col(m);
      mode.vector.normalize();
      mode.end = 2 * m < zeros ? ModeEnd::Left : ModeEnd::Right;
      const std::vector<double> amp = site_amplitudes(mode.vector);
      mode.end_weight = end_weight(amp, mode.end, width);
      mode.decay_length = decay_length(amp, mode.end);
      if (mode.end_weight <= 0.9) rep.gapless = true;
      rep.modes.push_back(std::move(mode));
    }
  }
  rep.count = rep.gapless ? 0 : zeros / 2;
  return rep;
}

MajoranaForm periodic_majorana(const ChainSpec& spec) {
  MajoranaForm form = build_majorana(spec);
  const int n = spec.n_sites();
  if (n < 3) throw SpecificationError("periodic wrap needs at least three sites");
  Eigen::MatrixXd& a = form.a;
  const int last = 2 * n - 1;
  if (spec.kind == ModelKind::Txy) {
    set_pair(a, last, 0, -0.5 * spec.jx.back());
    set_pair(a, last - 1, 1, 0.5 * spec.jy.back());
  } else {
    set_pair(a, last, 0, -0.5 * spec.b2.back());
    const double b3 = spec.b3.back();
    // three-spin terms centred on site N-1 (neighbours N-2, 0) and on site 0 (neighbours N-1, 1)
    set_pair(a, 2 * (n - 2) + 1, 0, -0.5 * b3);
    set_pair(a, last, 2, -0.5 * b3);
  }
  return form;
}

double bulk_gap(const ChainSpec& spec, Boundary boundary) {
  if (spec.n_sites() < 4) throw SpecificationError("bulk gap needs at least four sites");
  const MajoranaForm form = boundary == Boundary::Periodic ? periodic_majorana(spec) : build_majorana(spec);
  const Eigen::VectorXd s = singular_values(form.a);
  const double smax = s(s.size() - 1);
  if (boundary == Boundary::Periodic) return 4.0 * s(0);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) >= kOpenZeroThreshold * smax) return 4.0 * s(i);
  }
  return 0.0;
}

double soft_mode_momentum(double h_bar) {
  if (!(std::abs(h_bar) <= 1.0)) throw SpecificationError("soft-mode momentum needs |h_bar| <= 1");
  return std::acos(-h_bar);
}

std::vector<double> predict_crests(int n_osc) {
  if (n_osc < 2) throw SpecificationError("crest prediction needs n_osc >= 2");
  std::vector<double> out;
  for (int n = 1; n < n_osc; ++n) {
    const double v = -std::cos(std::numbers::pi * n / n_osc);
    if (v > 0.0 && v < 1.0) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ness
