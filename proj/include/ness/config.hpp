#pragma once

// JSON run configuration shared by every CLI subcommand. See docs/config.md.

#include "ness/model.hpp"
#include "ness/third_quant.hpp"
#include "ness/zero_modes.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ness {

struct GridAxis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int count = 2;

  /// min + (max - min) i / (count - 1); min when count == 1.
  double value(int i) const;
  double spacing() const;

  bool operator==(const GridAxis&) const = default;
};

struct AuxiliarySettings {
  bool enabled = true;
  double end_bond_scale = 0.02;
  double field_left = 0.0;
  double field_right = 0.0;

  bool operator==(const AuxiliarySettings&) const = default;
};

struct OutputSettings {
  std::string dir = "out";
  std::string stem = "sweep";
  bool csv = true;
  bool svg = true;
  int cell_size = 8;

  bool operator==(const OutputSettings&) const = default;
};

struct PointSettings {
  double param1 = 1.0;
  double param2 = 1.0;

  bool operator==(const PointSettings&) const = default;
};

struct SpectrumSettings {
  int n_sites = 10;
  double h = -0.5;
  double jx = 1.0;

  bool operator==(const SpectrumSettings&) const = default;
};

struct ZeroModeSettings {
  int n_sites = 40;
  ZeroModeOptions options;

  bool operator==(const ZeroModeSettings&) const = default;
};

struct CrestSettings {
  double gamma = 1.0 / 30.0;
  GridAxis h_bar{"h_bar", 0.0, 2.0, 61};
  std::vector<int> n_osc{10, 11, 12};

  bool operator==(const CrestSettings&) const = default;
};

struct OracleSettings {
  int random_draws = 0;
  double tolerance = 1e-6;
  bool mutate_bath_sign = false;  // negative-control fixture: flips the sign of Im M

  bool operator==(const OracleSettings&) const = default;
};

struct SweepConfig {
  ModelKind model = ModelKind::Txy;
  int n_sites = 12;  // including auxiliary spins
  double coupling_scale = 1.0;  // jx + jy for TXY, J for 3SI
  AuxiliarySettings auxiliary;
  BathSpec bath = BathSpec::symmetric(0.02, 0.1);
  GridAxis param1{"h_bar", 0.0, 2.0, 61};
  GridAxis param2{"gamma", -1.0, 1.0, 61};
  SolverTolerances solver;
  double denom_tol = 1e-12;
  int workers = 1;
  std::uint64_t seed = 0;
  OutputSettings output;
  PointSettings point;
  SpectrumSettings spectrum;
  ZeroModeSettings zero_modes;
  CrestSettings crests;
  OracleSettings oracle;

  bool operator==(const SweepConfig&) const = default;
};

/// Defaults for a model: TXY N = 12 on h_bar x gamma, 3SI N = 42 on lambda1 x lambda2.
SweepConfig default_config(ModelKind model);

/// Validated config with defaults applied. Unknown keys and type or range
/// violations throw ConfigError naming the key path.
SweepConfig config_from_json(const nlohmann::json& doc);
/// Throws IoError if the file cannot be read and ConfigError on malformed content.
SweepConfig parse_config(const std::string& path);
nlohmann::json config_to_json(const SweepConfig& cfg);

/// Grid parameter names accepted for a model.
std::vector<std::string> parameter_names(ModelKind model);

/// Chain at one grid point; p1 and p2 are interpreted through the axis names.
ChainSpec chain_at(const SweepConfig& cfg, double p1, double p2);
/// Same, with an explicit chain length.
ChainSpec chain_at(const SweepConfig& cfg, int n_sites, double p1, double p2);

}  // namespace ness
