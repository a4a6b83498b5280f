#pragma once

// Subcommands of the ness-chain executable.

#include "ness/config.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace ness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDeviation = 3;
inline constexpr int kExitIo = 4;

struct CommandOverrides {
  std::optional<std::string> out_dir;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
};

/// Applies command-line overrides; throws ConfigError for workers < 1.
void apply_overrides(SweepConfig& cfg, const CommandOverrides& o);

int command_single(const SweepConfig& cfg, std::ostream& out);
int command_sweep(const SweepConfig& cfg, std::ostream& out);
/// Returns kExitDeviation when any deviation exceeds cfg.oracle.tolerance or outcomes disagree.
int command_oracle_check(const SweepConfig& cfg, std::ostream& out);
int command_spectrum(const SweepConfig& cfg, std::ostream& out);
int command_zero_modes(const SweepConfig& cfg, std::ostream& out);
int command_crests(const SweepConfig& cfg, std::ostream& out);

/// Dispatch by name and map library exceptions to exit codes (messages go to err).
int run_command(const std::string& name, const std::string& config_path, const CommandOverrides& o,
                std::ostream& out, std::ostream& err);

}  // namespace ness
