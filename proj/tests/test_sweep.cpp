#include "doctest.h"

#include "ness/commands.hpp"
#include "ness/error.hpp"
#include "ness/oracle_compare.hpp"
#include "ness/output.hpp"
#include "ness/sweep.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace ness;
namespace fs = std::filesystem;

namespace {

SweepConfig small_grid() {
  SweepConfig c = default_config(ModelKind::Txy);
  c.param1.count = 2;
  c.param2 = {"gamma", 0.2, 0.8, 2};
  return c;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ness_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

int run(const std::string& cmd, const SweepConfig& cfg, const fs::path& dir, std::string* out_text = nullptr) {
  fs::create_directories(dir);
  const fs::path cfg_path = dir / "config.json";
  std::ofstream(cfg_path) << config_to_json(cfg).dump(2);
  std::ostringstream out, err;
  CommandOverrides o;
  o.out_dir = (dir / "out").string();
  const int code = run_command(cmd, cfg_path.string(), o, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

}  // namespace

TEST_CASE("small sweep") {
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult r = run_sweep(small_grid(), 1);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 1.0);
  REQUIRE(r.rows.size() == 4);
  for (const SweepRow& row : r.rows) {
    CHECK(row.status == PointStatus::Ok);
    CHECK(row.sz1.has_value());
    CHECK(row.g2.has_value());
    CHECK(*row.residual <= 1e-10 * std::max(row.y_norm, 1.0));
  }
  CHECK(r.at(1, 0).param1 == 2.0);
  CHECK(r.at(1, 0).param2 == 0.2);
  CHECK(r.at(0, 1).i2 == 1);

  const std::string csv = sweep_csv(r);
  CHECK(count_lines(csv) == 5);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("sweep is deterministic across worker counts") {
  SweepConfig c = small_grid();
  c.param1.count = 5;
  c.param2.count = 4;
  const std::string one = sweep_csv(run_sweep(c, 1));
  CHECK(sweep_csv(run_sweep(c, 3)) == one);
  CHECK(sweep_csv(run_sweep(c, 8)) == one);
  CHECK(sweep_csv(run_sweep(c, 1)) == one);
}

TEST_CASE("failed points carry a status and no values") {
  SweepConfig c = small_grid();
  c.bath = {0, 0, 0, 0};
  const SweepResult r = run_sweep(c, 2);
  for (const SweepRow& row : r.rows) {
    CHECK(row.status == PointStatus::NoUniqueNess);
    CHECK(!row.sz1);
    CHECK(!row.szn);
    CHECK(!row.g2);
    CHECK(!row.residual);
    CHECK(!row.message.empty());
  }
  const std::string csv = sweep_csv(r);
  CHECK(csv.find(",,,,,no_unique_ness\n") != std::string::npos);
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 12345.678, 0.0}) CHECK(std::stod(format_double(x)) == x);
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_optional(std::nullopt).empty());
}

TEST_CASE("heatmap size follows the grid") {
  SweepConfig c = small_grid();
  c.param1.count = 3;
  const SweepResult r = run_sweep(c, 1);
  for (int cell : {4, 10}) {
    const std::string svg = heatmap_svg(sweep_heatmap(r, "t", [](const SweepRow& row) { return row.sz1; }, cell));
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, std::regex("<g id=\"plot\"[^>]*>\\s*<rect width=\"(\\d+)\" height=\"(\\d+)\"")));
    CHECK(std::stoi(m[1]) == 3 * cell);
    CHECK(std::stoi(m[2]) == 2 * cell);
    CHECK(svg.find("h_bar") != std::string::npos);
    CHECK(svg.find("gamma") != std::string::npos);
  }
}

TEST_CASE("emit outputs") {
  SweepConfig c = small_grid();
  const fs::path dir = scratch_dir("emit");
  c.output.dir = dir.string();
  c.output.stem = "s";
  const SweepResult r = run_sweep(c, 1);
  const auto written = emit_outputs(r, c);
  CHECK(written.size() == 4);
  for (const auto& p : written) CHECK(fs::exists(p));
  const std::string first = slurp(dir / "s.csv");
  emit_outputs(run_sweep(c, 2), c);
  CHECK(slurp(dir / "s.csv") == first);
  fs::remove_all(dir);

  CHECK_THROWS_AS(emit_outputs(SweepResult{}, c), SpecificationError);
  c.output.dir = "/proc/ness_cannot_write_here";
  CHECK_THROWS_AS(emit_outputs(r, c), IoError);
}

TEST_CASE("local maxima and crest matching") {
  const std::vector<double> x{0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const std::vector<std::optional<double>> y{1, 3, 2, std::nullopt, 2, 5, 4};
  const std::vector<double> peaks = local_maxima(x, y, 0.0, 1.0);
  REQUIRE(peaks.size() == 2);
  CHECK(peaks[0] == 0.1);
  CHECK(peaks[1] == 0.5);

  const std::vector<double> predicted = predict_crests(12);
  CrestMatch m = match_crests(predicted, 12, 0.01);
  CHECK(m.matched);
  CHECK(m.worst_distance == 0.0);
  std::vector<double> shifted = predicted;
  shifted[2] += 0.05;
  m = match_crests(shifted, 12, 0.01);
  CHECK(!m.matched);
  CHECK(m.worst_distance == doctest::Approx(0.05));
  shifted = predicted;
  shifted.pop_back();
  CHECK(!match_crests(shifted, 12, 0.01).matched);
}

TEST_CASE("oracle comparison over a grid") {
  SweepConfig c = default_config(ModelKind::Txy);
  c.n_sites = 4;
  c.auxiliary.enabled = false;
  c.bath = BathSpec::symmetric(0.1, 0.1);
  c.param1.count = 5;
  c.param2.count = 5;
  c.oracle.random_draws = 4;
  const OracleReport ok = compare_oracle(c);
  CHECK(ok.rows.size() == 29);
  CHECK(ok.passed(1e-8));

  c.oracle.mutate_bath_sign = true;
  c.oracle.random_draws = 0;
  const OracleReport bad = compare_oracle(c);
  CHECK(!bad.passed(1e-6));
  CHECK(bad.max_deviation > 1e-6);

  c.n_sites = 7;
  CHECK_THROWS_AS(compare_oracle(c), ConfigError);
}

TEST_CASE("command exit codes") {
  const fs::path dir = scratch_dir("cli");
  SweepConfig c = small_grid();
  std::string text;
  CHECK(run("single", c, dir / "single", &text) == kExitOk);
  CHECK(text.find("\"sz1\"") != std::string::npos);
  CHECK(run("sweep", c, dir / "sweep") == kExitOk);
  CHECK(fs::exists(dir / "sweep" / "out" / "sweep.csv"));

  SweepConfig oracle = c;
  oracle.n_sites = 4;
  oracle.auxiliary.enabled = false;
  oracle.bath = BathSpec::symmetric(0.1, 0.1);
  CHECK(run("oracle-check", oracle, dir / "oracle") == kExitOk);
  oracle.oracle.mutate_bath_sign = true;
  CHECK(run("oracle-check", oracle, dir / "mutated") == kExitDeviation);
  oracle.n_sites = 9;
  oracle.oracle.mutate_bath_sign = false;
  CHECK(run("oracle-check", oracle, dir / "too_big") == kExitConfig);

  SweepConfig spectrum = c;
  CHECK(run("spectrum", spectrum, dir / "spectrum") == kExitOk);
  SweepConfig zm = c;
  zm.param1.count = 3;
  zm.param2.count = 3;
  zm.zero_modes.n_sites = 12;
  CHECK(run("zero-modes", zm, dir / "zero_modes") == kExitOk);
  SweepConfig crest = c;
  crest.crests.h_bar.count = 21;
  CHECK(run("crests", crest, dir / "crests") == kExitOk);
  SweepConfig three = default_config(ModelKind::ThreeSpin);
  three.n_sites = 8;
  CHECK(run("crests", three, dir / "crests3") == kExitConfig);

  std::ostringstream out, err;
  CHECK(run_command("single", (dir / "missing.json").string(), {}, out, err) == kExitIo);
  fs::create_directories(dir);
  std::ofstream(dir / "bad.json") << "{\"n_sites\": 1}";
  CHECK(run_command("single", (dir / "bad.json").string(), {}, out, err) == kExitConfig);
  CHECK(err.str().find("n_sites") != std::string::npos);
  CommandOverrides o;
  o.workers = 0;
  CHECK(run_command("single", (dir / "single" / "config.json").string(), o, out, err) == kExitConfig);
  o = {};
  o.out_dir = "/proc/ness_cannot_write_here";
  CHECK(run_command("sweep", (dir / "sweep" / "config.json").string(), o, out, err) == kExitIo);
  fs::remove_all(dir);
}
