#include "ness/sweep.hpp"

#include "ness/error.hpp"
#include "ness/observables.hpp"
#include "ness/zero_modes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace ness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double nearest_distance(double x, const std::vector<double>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (double v : set) best = std::min(best, std::abs(v - x));
  return best;
}

}  // namespace

std::string_view to_string(PointStatus status) {
  switch (status) {
    case PointStatus::Ok:
      return "ok";
    case PointStatus::NoUniqueNess:
      return "no_unique_ness";
    case PointStatus::UndefinedG2:
      return "undefined_g2";
    case PointStatus::NumericalError:
      return "numerical_error";
  }
  return "unknown";
}

SweepRow evaluate_point(const SweepConfig& cfg, double p1, double p2) {
  SweepRow row;
  row.param1 = p1;
  row.param2 = p2;
  row.y_norm = row.sigma_max = row.antisymmetry = kNaN;
  CorrelationMatrix c;
  try {
    c = solve_chain(chain_at(cfg, p1, p2), cfg.bath, cfg.solver);
  } catch (const NoUniqueNess& e) {
    row.status = PointStatus::NoUniqueNess;
    row.message = e.what();
    return row;
  } catch (const Error& e) {
    row.status = PointStatus::NumericalError;
    row.message = e.what();
    return row;
  }
  row.residual = c.residual;
  row.y_norm = c.y_norm;
  row.sigma_max = max_singular_value(c.c);
  row.antisymmetry = (c.c + c.c.transpose()).cwiseAbs().maxCoeff();
  row.sz1 = sz(c.c, 0);
  row.szn = sz(c.c, c.n_sites() - 1);
  try {
    row.g2 = g2_end_to_end(c.c, cfg.denom_tol);
  } catch (const UndefinedCorrelator& e) {
    row.status = PointStatus::UndefinedG2;
    row.message = e.what();
  }
  return row;
}

SweepResult run_sweep(const SweepConfig& cfg, int workers) {
  SweepResult result;
  result.model = cfg.model;
  result.n_sites = cfg.n_sites;
  result.param1 = cfg.param1;
  result.param2 = cfg.param2;
  const int n1 = cfg.param1.count;
  const int n2 = cfg.param2.count;
  const std::size_t total = static_cast<std::size_t>(n1) * n2;
  result.rows.resize(total);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const int i1 = static_cast<int>(k / n2);
      const int i2 = static_cast<int>(k % n2);
      SweepRow row = evaluate_point(cfg, cfg.param1.value(i1), cfg.param2.value(i2));
      row.i1 = i1;
      row.i2 = i2;
      result.rows[k] = std::move(row);
    }
  };
  const int w = static_cast<int>(std::min<std::size_t>(std::max(workers, 1), total));
  std::vector<std::thread> pool;
  for (int t = 1; t < w; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return result;
}

std::vector<double> local_maxima(const std::vector<double>& x, const std::vector<std::optional<double>>& y,
                                 double lo, double hi) {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (!y[i - 1] || !y[i] || !y[i + 1]) continue;
    if (!(x[i] > lo && x[i] < hi)) continue;
    if (*y[i] > *y[i - 1] && *y[i] >= *y[i + 1]) out.push_back(x[i]);
  }
  return out;
}

CrestScan scan_crests(const SweepConfig& cfg) {
  if (cfg.model != ModelKind::Txy) throw SpecificationError("crest scan is defined for the TXY model");
  SweepConfig line = cfg;
  line.param1 = {"h_bar", cfg.crests.h_bar.min, cfg.crests.h_bar.max, cfg.crests.h_bar.count};
  line.param2 = {"gamma", cfg.crests.gamma, cfg.crests.gamma, 2};
  CrestScan scan;
  for (int i = 0; i < line.param1.count; ++i) {
    const double h = line.param1.value(i);
    scan.h_bar.push_back(h);
    scan.g2.push_back(evaluate_point(line, h, cfg.crests.gamma).g2);
  }
  scan.crests = local_maxima(scan.h_bar, scan.g2, 0.0, 1.0);
  return scan;
}

CrestMatch match_crests(const std::vector<double>& computed, int n_osc, double spacing) {
  CrestMatch m;
  m.n_osc = n_osc;
  m.predicted = predict_crests(n_osc);
  double worst = 0.0;
  for (double p : m.predicted) worst = std::max(worst, nearest_distance(p, computed));
  for (double c : computed) worst = std::max(worst, nearest_distance(c, m.predicted));
  if (m.predicted.empty() && computed.empty()) worst = 0.0;
  m.worst_distance = worst;
  m.matched = worst <= spacing * (1.0 + 1e-9);
  return m;
}

}  // namespace ness
