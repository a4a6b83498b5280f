// ness-chain <subcommand> --config <path> [--out <dir>] [--workers K] [--seed S]

#include "ness/commands.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Steady states of boundary-driven TXY and 3SI spin chains"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int workers = 0;
  std::uint64_t seed = 0;

  const std::pair<const char*, const char*> commands[] = {
      {"single", "observables at config.point"},
      {"sweep", "full grid sweep with CSV and SVG output"},
      {"oracle-check", "compare against the dense Lindblad solver (N <= 6)"},
      {"spectrum", "exact open-chain TFIM spectrum against 4 sigma(A)"},
      {"zero-modes", "Majorana end-mode count over the grid"},
      {"crests", "computed g2 crests against the finite-size prediction"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON configuration")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_option("--workers", workers, "worker threads (overrides workers)");
    sub->add_option("--seed", seed, "random seed (overrides seed)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ness::kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  ness::CommandOverrides o;
  if (sub->count("--out")) o.out_dir = out_dir;
  if (sub->count("--workers")) o.workers = workers;
  if (sub->count("--seed")) o.seed = seed;
  return ness::run_command(sub->get_name(), config_path, o, std::cout, std::cerr);
}
