#pragma once

// Phase-diagram sweeps over a two-parameter grid.

#include "ness/config.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ness {

enum class PointStatus { Ok, NoUniqueNess, UndefinedG2, NumericalError };

std::string_view to_string(PointStatus status);

struct SweepRow {
  int i1 = 0;
  int i2 = 0;
  double param1 = 0.0;
  double param2 = 0.0;
  std::optional<double> sz1;
  std::optional<double> szn;
  std::optional<double> g2;
  std::optional<double> residual;
  // hygiene diagnostics, NaN when no solution exists
  double y_norm = 0.0;
  double sigma_max = 0.0;
  double antisymmetry = 0.0;  // max |C + C^T|
  PointStatus status = PointStatus::Ok;
  std::string message;
};

struct SweepResult {
  ModelKind model = ModelKind::Txy;
  int n_sites = 0;
  GridAxis param1;
  GridAxis param2;
  std::vector<SweepRow> rows;  // row-major over (i1, i2)

  const SweepRow& at(int i1, int i2) const { return rows[static_cast<std::size_t>(i1) * param2.count + i2]; }
};

/// One grid point of cfg: chain -> drift -> NESS -> observables. Solver
/// failures are recorded in the row status, never thrown.
SweepRow evaluate_point(const SweepConfig& cfg, double p1, double p2);

/// Full grid with `workers` threads pulling points; rows are stored by index,
/// so the result does not depend on the schedule.
SweepResult run_sweep(const SweepConfig& cfg, int workers);

/// g2 along h_bar at fixed gamma (cfg.crests) and its interior local maxima in (0, 1).
struct CrestScan {
  std::vector<double> h_bar;
  std::vector<std::optional<double>> g2;
  std::vector<double> crests;
};

struct CrestMatch {
  int n_osc = 0;
  std::vector<double> predicted;
  double worst_distance = 0.0;  // max over both sets of the distance to the nearest partner
  bool matched = false;         // worst_distance <= one grid spacing
};

/// TXY only; throws SpecificationError otherwise.
CrestScan scan_crests(const SweepConfig& cfg);
/// Local maxima of a sampled curve strictly inside (lo, hi).
std::vector<double> local_maxima(const std::vector<double>& x, const std::vector<std::optional<double>>& y,
                                 double lo, double hi);
CrestMatch match_crests(const std::vector<double>& computed, int n_osc, double spacing);

}  // namespace ness
