#pragma once

// Third-quantisation pipeline against the dense Lindblad oracle.

#include "ness/config.hpp"
#include "ness/model.hpp"

#include <random>
#include <string>
#include <vector>

namespace ness {

enum class InstanceOutcome { Unique, NotUnique, UndefinedG2 };

struct OracleComparison {
  std::string label;
  InstanceOutcome third_quant = InstanceOutcome::Unique;
  InstanceOutcome oracle = InstanceOutcome::Unique;
  double d_sz1 = 0.0;
  double d_szn = 0.0;
  double d_g2 = 0.0;
  bool agree = true;

  double max_deviation() const;
};

struct OracleReport {
  std::vector<OracleComparison> rows;
  double max_deviation = 0.0;  // infinite when outcomes disagree
  int disagreements = 0;

  bool passed(double tolerance) const { return disagreements == 0 && max_deviation <= tolerance; }
};

/// Solve one instance both ways. mutate_bath_sign flips Im M on the third-quant side (negative control).
OracleComparison compare_instance(const ChainSpec& chain, const BathSpec& bath, const SolverTolerances& tol = {},
                                  double denom_tol = 1e-12, bool mutate_bath_sign = false);

/// Uniform draws: couplings in [-1, 1], Gamma in [0.01, 0.5], n in [0, 1].
ChainSpec random_chain(ModelKind kind, int n_sites, std::mt19937_64& rng);
BathSpec random_bath(std::mt19937_64& rng);

/// Every grid point of cfg plus cfg.oracle.random_draws random instances of cfg.model at cfg.n_sites.
/// Throws ConfigError when cfg.n_sites > 6.
OracleReport compare_oracle(const SweepConfig& cfg);

}  // namespace ness
