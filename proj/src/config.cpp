#include "ness/config.hpp"

#include "ness/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace ness {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  require_object(j, path);
  for (const auto& [key, value] : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!known) throw ConfigError(join(path, key), "unknown key");
  }
}

void read(const json& j, const char* key, const std::string& path, double& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
  out = v.get<double>();
  if (!std::isfinite(out)) throw ConfigError(join(path, key), "must be finite");
}

void read(const json& j, const char* key, const std::string& path, int& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
  const auto wide = v.get<std::int64_t>();
  if (wide < -1000000000 || wide > 1000000000) throw ConfigError(join(path, key), "integer out of range");
  out = static_cast<int>(wide);
}

void read(const json& j, const char* key, const std::string& path, std::uint64_t& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number_unsigned()) throw ConfigError(join(path, key), "expected a nonnegative integer");
  out = v.get<std::uint64_t>();
}

void read(const json& j, const char* key, const std::string& path, bool& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_boolean()) throw ConfigError(join(path, key), "expected true or false");
  out = v.get<bool>();
}

void read(const json& j, const char* key, const std::string& path, std::string& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(join(path, key), "expected a string");
  out = v.get<std::string>();
}

void require(bool ok, const std::string& path, const std::string& message) {
  if (!ok) throw ConfigError(path, message);
}

void read_axis(const json& j, const std::string& path, GridAxis& axis, bool named) {
  if (named) {
    check_keys(j, path, {"name", "min", "max", "count"});
    read(j, "name", path, axis.name);
  } else {
    check_keys(j, path, {"min", "max", "count"});
  }
  read(j, "min", path, axis.min);
  read(j, "max", path, axis.max);
  read(j, "count", path, axis.count);
  require(axis.count >= 2, join(path, "count"), "must be at least 2");
  require(axis.max >= axis.min, join(path, "max"), "must not be below min");
}

json axis_json(const GridAxis& a, bool named) {
  json j = {{"min", a.min}, {"max", a.max}, {"count", a.count}};
  if (named) j["name"] = a.name;
  return j;
}

ModelKind read_model(const json& doc) {
  if (!doc.contains("model")) return ModelKind::Txy;
  const json& v = doc.at("model");
  if (!v.is_string()) throw ConfigError("model", "expected a string");
  try {
    return parse_model_kind(v.get<std::string>());
  } catch (const SpecificationError& e) {
    throw ConfigError("model", e.what());
  }
}

void validate(const SweepConfig& c) {
  const bool aux = c.auxiliary.enabled;
  const int min_sites = aux ? (c.model == ModelKind::Txy ? 4 : 5) : 3;
  require(c.n_sites >= min_sites, "n_sites",
          "must be at least " + std::to_string(min_sites) + " for this model and auxiliary setting");
  require(c.coupling_scale != 0.0, "coupling_scale", "must be nonzero");
  require(c.auxiliary.end_bond_scale >= 0.0, "auxiliary.end_bond_scale", "must be nonnegative");
  for (auto [v, key] : {std::pair{c.bath.gamma_left, "gamma_left"}, std::pair{c.bath.gamma_right, "gamma_right"},
                        std::pair{c.bath.n_left, "n_left"}, std::pair{c.bath.n_right, "n_right"}}) {
    require(v >= 0.0, join("bath", key), "must be nonnegative");
  }
  const auto names = parameter_names(c.model);
  for (auto [axis, key] : {std::pair{&c.param1, "param1"}, std::pair{&c.param2, "param2"}}) {
    require(std::find(names.begin(), names.end(), axis->name) != names.end(), "grid." + std::string(key) + ".name",
            "must be " + names[0] + " or " + names[1] + " for model " + std::string(to_string(c.model)));
  }
  require(c.param1.name != c.param2.name, "grid.param2.name", "must differ from grid.param1.name");
  require(c.solver.stability > 0.0, "solver.stability", "must be positive");
  require(c.solver.residual > 0.0, "solver.residual", "must be positive");
  require(c.solver.degeneracy > 0.0, "solver.degeneracy", "must be positive");
  require(c.denom_tol > 0.0, "denom_tol", "must be positive");
  require(c.workers >= 1, "workers", "must be at least 1");
  require(c.output.cell_size >= 1, "output.cell_size", "must be at least 1");
  require(!c.output.stem.empty(), "output.stem", "must not be empty");
  require(c.spectrum.n_sites >= 1, "spectrum.n_sites", "must be at least 1");
  require(c.spectrum.jx != 0.0, "spectrum.jx", "must be nonzero");
  require(c.zero_modes.n_sites >= 4, "zero_modes.n_sites", "must be at least 4");
  require(c.zero_modes.options.rel_threshold > 0.0, "zero_modes.rel_threshold", "must be positive");
  require(c.zero_modes.options.gapless_ratio > 0.0, "zero_modes.gapless_ratio", "must be positive");
  require(c.zero_modes.options.end_fraction > 0.0 && c.zero_modes.options.end_fraction <= 0.5,
          "zero_modes.end_fraction", "must lie in (0, 0.5]");
  require(!c.crests.n_osc.empty(), "crests.n_osc", "must not be empty");
  for (int n : c.crests.n_osc) require(n >= 2, "crests.n_osc", "entries must be at least 2");
  require(c.oracle.random_draws >= 0, "oracle.random_draws", "must be nonnegative");
  require(c.oracle.tolerance > 0.0, "oracle.tolerance", "must be positive");
}

}  // namespace

double GridAxis::value(int i) const {
  if (count <= 1) return min;
  if (i == count - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

double GridAxis::spacing() const { return count > 1 ? (max - min) / (count - 1) : 0.0; }

std::vector<std::string> parameter_names(ModelKind model) {
  if (model == ModelKind::Txy) return {"h_bar", "gamma"};
  return {"lambda1", "lambda2"};
}

SweepConfig default_config(ModelKind model) {
  SweepConfig c;
  c.model = model;
  if (model == ModelKind::ThreeSpin) {
    c.n_sites = 42;
    c.param1 = {"lambda1", 0.0, 4.0, 61};
    c.param2 = {"lambda2", -4.0, 4.0, 61};
  }
  return c;
}

SweepConfig config_from_json(const json& doc) {
  check_keys(doc, "",
             {"model", "n_sites", "coupling_scale", "auxiliary", "bath", "grid", "solver", "denom_tol", "workers",
              "seed", "output", "point", "spectrum", "zero_modes", "crests", "oracle"});
  SweepConfig c = default_config(read_model(doc));
  read(doc, "n_sites", "", c.n_sites);
  read(doc, "coupling_scale", "", c.coupling_scale);
  read(doc, "denom_tol", "", c.denom_tol);
  read(doc, "workers", "", c.workers);
  read(doc, "seed", "", c.seed);

  if (doc.contains("auxiliary")) {
    const json& j = doc.at("auxiliary");
    check_keys(j, "auxiliary", {"enabled", "end_bond_scale", "field_left", "field_right"});
    read(j, "enabled", "auxiliary", c.auxiliary.enabled);
    read(j, "end_bond_scale", "auxiliary", c.auxiliary.end_bond_scale);
    read(j, "field_left", "auxiliary", c.auxiliary.field_left);
    read(j, "field_right", "auxiliary", c.auxiliary.field_right);
  }
  if (doc.contains("bath")) {
    const json& j = doc.at("bath");
    check_keys(j, "bath", {"gamma", "n_th", "gamma_left", "gamma_right", "n_left", "n_right"});
    double gamma = c.bath.gamma_left;
    double n_th = c.bath.n_left;
    const bool has_gamma = j.contains("gamma");
    const bool has_n = j.contains("n_th");
    read(j, "gamma", "bath", gamma);
    read(j, "n_th", "bath", n_th);
    if (has_gamma) c.bath.gamma_left = c.bath.gamma_right = gamma;
    if (has_n) c.bath.n_left = c.bath.n_right = n_th;
    read(j, "gamma_left", "bath", c.bath.gamma_left);
    read(j, "gamma_right", "bath", c.bath.gamma_right);
    read(j, "n_left", "bath", c.bath.n_left);
    read(j, "n_right", "bath", c.bath.n_right);
  }
  if (doc.contains("grid")) {
    const json& j = doc.at("grid");
    check_keys(j, "grid", {"param1", "param2"});
    if (j.contains("param1")) read_axis(j.at("param1"), "grid.param1", c.param1, true);
    if (j.contains("param2")) read_axis(j.at("param2"), "grid.param2", c.param2, true);
  }
  if (doc.contains("solver")) {
    const json& j = doc.at("solver");
    check_keys(j, "solver", {"stability", "residual", "degeneracy"});
    read(j, "stability", "solver", c.solver.stability);
    read(j, "residual", "solver", c.solver.residual);
    read(j, "degeneracy", "solver", c.solver.degeneracy);
  }
  if (doc.contains("output")) {
    const json& j = doc.at("output");
    check_keys(j, "output", {"dir", "stem", "csv", "svg", "cell_size"});
    read(j, "dir", "output", c.output.dir);
    read(j, "stem", "output", c.output.stem);
    read(j, "csv", "output", c.output.csv);
    read(j, "svg", "output", c.output.svg);
    read(j, "cell_size", "output", c.output.cell_size);
  }
  if (doc.contains("point")) {
    const json& j = doc.at("point");
    check_keys(j, "point", {"param1", "param2"});
    read(j, "param1", "point", c.point.param1);
    read(j, "param2", "point", c.point.param2);
  }
  if (doc.contains("spectrum")) {
    const json& j = doc.at("spectrum");
    check_keys(j, "spectrum", {"n_sites", "h", "jx"});
    read(j, "n_sites", "spectrum", c.spectrum.n_sites);
    read(j, "h", "spectrum", c.spectrum.h);
    read(j, "jx", "spectrum", c.spectrum.jx);
  }
  if (doc.contains("zero_modes")) {
    const json& j = doc.at("zero_modes");
    check_keys(j, "zero_modes", {"n_sites", "rel_threshold", "gapless_ratio", "end_fraction"});
    read(j, "n_sites", "zero_modes", c.zero_modes.n_sites);
    read(j, "rel_threshold", "zero_modes", c.zero_modes.options.rel_threshold);
    read(j, "gapless_ratio", "zero_modes", c.zero_modes.options.gapless_ratio);
    read(j, "end_fraction", "zero_modes", c.zero_modes.options.end_fraction);
  }
  if (doc.contains("crests")) {
    const json& j = doc.at("crests");
    check_keys(j, "crests", {"gamma", "h_bar", "n_osc"});
    read(j, "gamma", "crests", c.crests.gamma);
    if (j.contains("h_bar")) read_axis(j.at("h_bar"), "crests.h_bar", c.crests.h_bar, false);
    if (j.contains("n_osc")) {
      const json& v = j.at("n_osc");
      if (!v.is_array()) throw ConfigError("crests.n_osc", "expected an array of integers");
      c.crests.n_osc.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer()) {
          throw ConfigError("crests.n_osc[" + std::to_string(i) + "]", "expected an integer");
        }
        c.crests.n_osc.push_back(v[i].get<int>());
      }
    }
  }
  if (doc.contains("oracle")) {
    const json& j = doc.at("oracle");
    check_keys(j, "oracle", {"random_draws", "tolerance", "mutate_bath_sign"});
    read(j, "random_draws", "oracle", c.oracle.random_draws);
    read(j, "tolerance", "oracle", c.oracle.tolerance);
    read(j, "mutate_bath_sign", "oracle", c.oracle.mutate_bath_sign);
  }
  validate(c);
  return c;
}

SweepConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(doc);
}

json config_to_json(const SweepConfig& c) {
  json j;
  j["model"] = std::string(to_string(c.model));
  j["n_sites"] = c.n_sites;
  j["coupling_scale"] = c.coupling_scale;
  j["auxiliary"] = {{"enabled", c.auxiliary.enabled},
                    {"end_bond_scale", c.auxiliary.end_bond_scale},
                    {"field_left", c.auxiliary.field_left},
                    {"field_right", c.auxiliary.field_right}};
  j["bath"] = {{"gamma_left", c.bath.gamma_left},
               {"gamma_right", c.bath.gamma_right},
               {"n_left", c.bath.n_left},
               {"n_right", c.bath.n_right}};
  j["grid"] = {{"param1", axis_json(c.param1, true)}, {"param2", axis_json(c.param2, true)}};
  j["solver"] = {
      {"stability", c.solver.stability}, {"residual", c.solver.residual}, {"degeneracy", c.solver.degeneracy}};
  j["denom_tol"] = c.denom_tol;
  j["workers"] = c.workers;
  j["seed"] = c.seed;
  j["output"] = {{"dir", c.output.dir},
                 {"stem", c.output.stem},
                 {"csv", c.output.csv},
                 {"svg", c.output.svg},
                 {"cell_size", c.output.cell_size}};
  j["point"] = {{"param1", c.point.param1}, {"param2", c.point.param2}};
  j["spectrum"] = {{"n_sites", c.spectrum.n_sites}, {"h", c.spectrum.h}, {"jx", c.spectrum.jx}};
  j["zero_modes"] = {{"n_sites", c.zero_modes.n_sites},
                     {"rel_threshold", c.zero_modes.options.rel_threshold},
                     {"gapless_ratio", c.zero_modes.options.gapless_ratio},
                     {"end_fraction", c.zero_modes.options.end_fraction}};
  j["crests"] = {{"gamma", c.crests.gamma}, {"h_bar", axis_json(c.crests.h_bar, false)}, {"n_osc", c.crests.n_osc}};
  j["oracle"] = {{"random_draws", c.oracle.random_draws},
                 {"tolerance", c.oracle.tolerance},
                 {"mutate_bath_sign", c.oracle.mutate_bath_sign}};
  return j;
}

ChainSpec chain_at(const SweepConfig& cfg, double p1, double p2) { return chain_at(cfg, cfg.n_sites, p1, p2); }

ChainSpec chain_at(const SweepConfig& cfg, int n_sites, double p1, double p2) {
  const auto names = parameter_names(cfg.model);
  const bool swapped = cfg.param1.name == names[1];
  const double first = swapped ? p2 : p1;
  const double second = swapped ? p1 : p2;
  const int bulk_sites = cfg.auxiliary.enabled ? n_sites - 2 : n_sites;
  ChainSpec bulk;
  if (cfg.model == ModelKind::Txy) {
    const TxyCouplings t = from_reduced(second, first, cfg.coupling_scale);
    bulk = ChainSpec::uniform_txy(bulk_sites, t.h, t.jx, t.jy);
  } else {
    bulk = ChainSpec::uniform_3si(bulk_sites, cfg.coupling_scale, first, second);
  }
  if (!cfg.auxiliary.enabled) return bulk;
  return attach_auxiliary(bulk, cfg.auxiliary.end_bond_scale, {cfg.auxiliary.field_left, cfg.auxiliary.field_right});
}

}  // namespace ness
