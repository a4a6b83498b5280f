#pragma once

// Majorana zero modes, bulk gaps and finite-size crest prediction.

#include "ness/model.hpp"

#include <Eigen/Dense>

#include <vector>

namespace ness {

struct ZeroModeOptions {
  double rel_threshold = 1e-6;  // sigma < rel_threshold * sigma_max counts as zero
  double gapless_ratio = 0.05;  // first nonzero sigma / sigma_max below this means the bulk is gapless
  double end_fraction = 0.1;    // outer fraction of sites used for end_weight

  bool operator==(const ZeroModeOptions&) const = default;
};

enum class ModeEnd { Left, Right };

struct ZeroMode {
  Eigen::VectorXd vector;  // unit vector in Majorana space
  ModeEnd end = ModeEnd::Left;
  double end_weight = 0.0;    // squared amplitude on the outer end_fraction of sites at `end`
  double decay_length = 0.0;  // in sites; 0 for a single-site mode, inf if no decay is visible
};

struct ZeroModeReport {
  bool gapless = false;
  int count = 0;  // modes per end; meaningless when gapless
  std::vector<ZeroMode> modes;
  std::vector<double> smallest_singular_values;  // ascending, relative to sigma_max, at most 8
  double sigma_max = 0.0;
};

/// SVD of A; near-zero right singular vectors are split into left and right
/// end modes by diagonalising the site-position operator on that subspace.
/// Throws SpecificationError for A == 0.
ZeroModeReport find_zero_modes(const MajoranaForm& form, const ZeroModeOptions& opt = {});

/// Per-site amplitude sqrt(v_{2i}^2 + v_{2i+1}^2).
std::vector<double> site_amplitudes(const Eigen::VectorXd& v);

enum class Boundary { Open, Periodic };

/// Adds wrap-around couplings copied from the last bond (and last three-spin term) of the chain.
/// The fermion-parity sign of the wrap is ignored.
MajoranaForm periodic_majorana(const ChainSpec& spec);

/// Smallest positive one-particle energy 4 sigma_min(A). For open chains,
/// singular values below 1e-6 sigma_max (zero modes) are skipped. Needs N >= 4.
double bulk_gap(const ChainSpec& spec, Boundary boundary);

/// arccos(-h_bar); throws SpecificationError for |h_bar| > 1.
double soft_mode_momentum(double h_bar);

/// {-cos(pi n / n_osc) : 0 < value < 1}, ascending. Needs n_osc >= 2.
std::vector<double> predict_crests(int n_osc);

}  // namespace ness
