#include "ness/commands.hpp"

#include "ness/analytic_tfim.hpp"
#include "ness/error.hpp"
#include "ness/oracle_compare.hpp"
#include "ness/output.hpp"
#include "ness/sweep.hpp"
#include "ness/third_quant.hpp"
#include "ness/zero_modes.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <map>

namespace ness {

namespace {

using Clock = std::chrono::steady_clock;

std::filesystem::path out_path(const SweepConfig& cfg, const std::string& suffix) {
  return std::filesystem::path(cfg.output.dir) / (cfg.output.stem + suffix);
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

const char* outcome_name(InstanceOutcome o) {
  switch (o) {
    case InstanceOutcome::Unique:
      return "unique";
    case InstanceOutcome::NotUnique:
      return "not_unique";
    case InstanceOutcome::UndefinedG2:
      return "undefined_g2";
  }
  return "unknown";
}

const char* branch_name(RootBranch b) {
  switch (b) {
    case RootBranch::Real:
      return "real";
    case RootBranch::Imaginary:
      return "i*kappa";
    case RootBranch::PiPlusImaginary:
      return "pi+i*kappa";
  }
  return "unknown";
}

}  // namespace

void apply_overrides(SweepConfig& cfg, const CommandOverrides& o) {
  if (o.out_dir) cfg.output.dir = *o.out_dir;
  if (o.workers) {
    if (*o.workers < 1) throw ConfigError("--workers", "must be at least 1");
    cfg.workers = *o.workers;
  }
  if (o.seed) cfg.seed = *o.seed;
}

int command_single(const SweepConfig& cfg, std::ostream& out) {
  const SweepRow row = evaluate_point(cfg, cfg.point.param1, cfg.point.param2);
  nlohmann::json j;
  j["model"] = std::string(to_string(cfg.model));
  j["N"] = cfg.n_sites;
  j[cfg.param1.name] = cfg.point.param1;
  j[cfg.param2.name] = cfg.point.param2;
  j["sz1"] = optional_json(row.sz1);
  j["szN"] = optional_json(row.szn);
  j["g2"] = optional_json(row.g2);
  j["residual"] = optional_json(row.residual);
  if (row.residual) {
    j["y_norm"] = row.y_norm;
    j["sigma_max_C"] = row.sigma_max;
  }
  j["status"] = std::string(to_string(row.status));
  if (!row.message.empty()) j["message"] = row.message;
  out << j.dump(2) << "\n";
  return kExitOk;
}

int command_sweep(const SweepConfig& cfg, std::ostream& out) {
  const auto t0 = Clock::now();
  const SweepResult result = run_sweep(cfg, cfg.workers);
  const double elapsed = seconds_since(t0);
  const auto files = emit_outputs(result, cfg);
  std::map<std::string, int> counts;
  for (const SweepRow& r : result.rows) ++counts[std::string(to_string(r.status))];
  out << "sweep " << to_string(cfg.model) << " N=" << cfg.n_sites << ": " << result.rows.size() << " points in "
      << std::fixed << std::setprecision(2) << elapsed << " s on " << cfg.workers << " worker(s)\n";
  out.unsetf(std::ios::floatfield);
  for (const auto& [status, n] : counts) out << "  " << status << ": " << n << "\n";
  for (const auto& f : files) out << "  wrote " << f.string() << "\n";
  return kExitOk;
}

int command_oracle_check(const SweepConfig& cfg, std::ostream& out) {
  const OracleReport report = compare_oracle(cfg);
  std::string csv = "label,third_quant,oracle,d_sz1,d_szN,d_g2,agree\n";
  for (const OracleComparison& c : report.rows) {
    csv += c.label + ',' + outcome_name(c.third_quant) + ',' + outcome_name(c.oracle) + ',' + format_double(c.d_sz1) +
           ',' + format_double(c.d_szn) + ',' + format_double(c.d_g2) + ',' + (c.agree ? "true" : "false") + '\n';
  }
  write_text_file(out_path(cfg, "_oracle.csv"), csv);
  const bool ok = report.passed(cfg.oracle.tolerance);
  out << "oracle-check " << to_string(cfg.model) << " N=" << cfg.n_sites << ": " << report.rows.size()
      << " instances, " << report.disagreements << " outcome disagreements, max deviation "
      << std::setprecision(3) << report.max_deviation << " (tolerance " << cfg.oracle.tolerance << ") -> "
      << (ok ? "PASS" : "FAIL") << "\n";
  out << "  wrote " << out_path(cfg, "_oracle.csv").string() << "\n";
  return ok ? kExitOk : kExitDeviation;
}

int command_spectrum(const SweepConfig& cfg, std::ostream& out) {
  const SpectrumSettings& s = cfg.spectrum;
  const TfimSpectrum spec = solve_k_spectrum(s.n_sites, s.h, s.jx);
  const MajoranaForm form = build_txy_majorana(ChainSpec::uniform_txy(s.n_sites, s.h, s.jx, 0.0));
  Eigen::BDCSVD<Eigen::MatrixXd> svd(form.a);
  std::vector<double> numeric;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); i += 2) numeric.push_back(4.0 * svd.singularValues()(i));
  std::sort(numeric.begin(), numeric.end());

  struct Line {
    std::string branch;
    double root;
    double energy;
  };
  std::vector<Line> lines;
  for (std::size_t i = 0; i < spec.k_real.size(); ++i) lines.push_back({"real", spec.k_real[i], spec.energies[i]});
  if (spec.kappa) lines.push_back({branch_name(spec.kappa->branch), spec.kappa->value, spec.epsilon_kappa});
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.energy < b.energy; });

  std::string csv = "branch,root,energy,svd_energy\n";
  double worst = 0.0;
  out << "TFIM N=" << s.n_sites << " h=" << s.h << " jx=" << s.jx << " xi=" << spec.xi << ": " << spec.k_real.size()
      << " real roots" << (spec.kappa ? " + bound state" : "") << "\n";
  out << std::setw(12) << "branch" << std::setw(24) << "root" << std::setw(24) << "energy" << std::setw(24)
      << "4*sigma(A)" << "\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const double svd_e = i < numeric.size() ? numeric[i] : std::nan("");
    worst = std::max(worst, std::abs(svd_e - lines[i].energy));
    out << std::setw(12) << lines[i].branch << std::setw(24) << std::setprecision(15) << lines[i].root
        << std::setw(24) << lines[i].energy << std::setw(24) << svd_e << "\n";
    csv += lines[i].branch + ',' + format_double(lines[i].root) + ',' + format_double(lines[i].energy) + ',' +
           format_double(svd_e) + '\n';
  }
  out << "max |energy - 4 sigma(A)| = " << std::setprecision(3) << worst << "\n";
  write_text_file(out_path(cfg, "_spectrum.csv"), csv);
  out << "  wrote " << out_path(cfg, "_spectrum.csv").string() << "\n";
  return kExitOk;
}

int command_zero_modes(const SweepConfig& cfg, std::ostream& out) {
  SweepConfig bulk = cfg;
  bulk.auxiliary.enabled = false;
  const int n = cfg.zero_modes.n_sites;
  SweepResult counts;
  counts.model = cfg.model;
  counts.n_sites = n;
  counts.param1 = cfg.param1;
  counts.param2 = cfg.param2;
  std::string csv = "model,N,param1,param2,count,gapless,sigma_min\n";
  std::map<std::string, int> tally;
  for (int i1 = 0; i1 < cfg.param1.count; ++i1) {
    for (int i2 = 0; i2 < cfg.param2.count; ++i2) {
      const double p1 = cfg.param1.value(i1);
      const double p2 = cfg.param2.value(i2);
      const ZeroModeReport rep = find_zero_modes(build_majorana(chain_at(bulk, n, p1, p2)), cfg.zero_modes.options);
      SweepRow row;
      row.i1 = i1;
      row.i2 = i2;
      row.param1 = p1;
      row.param2 = p2;
      if (!rep.gapless) row.g2 = rep.count;
      counts.rows.push_back(row);
      const std::string label = rep.gapless ? "gapless" : "n=" + std::to_string(rep.count);
      ++tally[label];
      const double sigma_min = rep.smallest_singular_values.empty() ? 0.0 : rep.smallest_singular_values.front();
      csv += std::string(to_string(cfg.model)) + ',' + std::to_string(n) + ',' + format_double(p1) + ',' +
             format_double(p2) + ',' + (rep.gapless ? std::string() : std::to_string(rep.count)) + ',' +
             (rep.gapless ? "true" : "false") + ',' + format_double(sigma_min) + '\n';
    }
  }
  write_text_file(out_path(cfg, "_zero_modes.csv"), csv);
  out << "zero-mode map " << to_string(cfg.model) << " N=" << n << ":\n";
  for (const auto& [label, c] : tally) out << "  " << label << ": " << c << "\n";
  out << "  wrote " << out_path(cfg, "_zero_modes.csv").string() << "\n";
  if (cfg.output.svg) {
    write_text_file(out_path(cfg, "_zero_modes.svg"),
                    heatmap_svg(sweep_heatmap(
                        counts, "Majorana end modes n, " + std::string(to_string(cfg.model)) + " N=" + std::to_string(n),
                        [](const SweepRow& r) { return r.g2; }, cfg.output.cell_size)));
    out << "  wrote " << out_path(cfg, "_zero_modes.svg").string() << "\n";
  }
  return kExitOk;
}

int command_crests(const SweepConfig& cfg, std::ostream& out) {
  const CrestScan scan = scan_crests(cfg);
  const double spacing = cfg.crests.h_bar.spacing();
  out << "g2 crests along gamma=" << cfg.crests.gamma << " (N=" << cfg.n_sites << ", spacing " << spacing << "):";
  for (double c : scan.crests) out << " " << std::setprecision(4) << c;
  out << "\n";
  std::string csv = "kind,n_osc,h_bar\n";
  for (double c : scan.crests) csv += "computed,," + format_double(c) + '\n';
  for (int n_osc : cfg.crests.n_osc) {
    const CrestMatch m = match_crests(scan.crests, n_osc, spacing);
    out << "  N_osc=" << n_osc << " predicted:";
    for (double p : m.predicted) out << " " << std::setprecision(4) << p;
    out << "  worst distance " << std::setprecision(3) << m.worst_distance << " -> "
        << (m.matched ? "match" : "no match") << "\n";
    for (double p : m.predicted) csv += "predicted," + std::to_string(n_osc) + ',' + format_double(p) + '\n';
  }
  std::string curve = "h_bar,g2\n";
  for (std::size_t i = 0; i < scan.h_bar.size(); ++i) {
    curve += format_double(scan.h_bar[i]) + ',' + format_optional(scan.g2[i]) + '\n';
  }
  write_text_file(out_path(cfg, "_crests.csv"), csv);
  write_text_file(out_path(cfg, "_crest_scan.csv"), curve);
  out << "  wrote " << out_path(cfg, "_crests.csv").string() << " and " << out_path(cfg, "_crest_scan.csv").string()
      << "\n";
  return kExitOk;
}

int run_command(const std::string& name, const std::string& config_path, const CommandOverrides& o,
                std::ostream& out, std::ostream& err) {
  try {
    SweepConfig cfg = parse_config(config_path);
    apply_overrides(cfg, o);
    if (name == "single") return command_single(cfg, out);
    if (name == "sweep") return command_sweep(cfg, out);
    if (name == "oracle-check") return command_oracle_check(cfg, out);
    if (name == "spectrum") return command_spectrum(cfg, out);
    if (name == "zero-modes") return command_zero_modes(cfg, out);
    if (name == "crests") return command_crests(cfg, out);
    err << "unknown subcommand '" << name << "'\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const SpecificationError& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DegenerateParameterization& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace ness
