#include "ness/oracle_compare.hpp"

#include "ness/error.hpp"
#include "ness/observables.hpp"
#include "ness/oracle.hpp"
#include "ness/third_quant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace ness {

namespace {

constexpr int kMaxCompareSites = 6;

struct Side {
  InstanceOutcome outcome = InstanceOutcome::Unique;
  double sz1 = 0.0;
  double szn = 0.0;
  double g2 = 0.0;
};

Side third_quant_side(const ChainSpec& chain, const BathSpec& bath, const SolverTolerances& tol, double denom_tol,
                      bool mutate) {
  Side s;
  const MajoranaForm form = build_majorana(chain);
  BathMatrix m = build_bath_matrix(bath, form.n_sites);
  if (mutate) m.m = m.m.conjugate().eval();
  CorrelationMatrix c;
  try {
    c = solve_ness(build_drift(form, m), tol);
  } catch (const NoUniqueNess&) {
    s.outcome = InstanceOutcome::NotUnique;
    return s;
  }
  s.sz1 = sz(c.c, 0);
  s.szn = sz(c.c, form.n_sites - 1);
  try {
    s.g2 = g2_end_to_end(c.c, denom_tol);
  } catch (const UndefinedCorrelator&) {
    s.outcome = InstanceOutcome::UndefinedG2;
  }
  return s;
}

Side oracle_side(const ChainSpec& chain, const BathSpec& bath, double denom_tol) {
  Side s;
  DenseNess ness;
  try {
    ness = solve_dense_chain(chain, bath);
  } catch (const DegenerateNess&) {
    s.outcome = InstanceOutcome::NotUnique;
    return s;
  }
  try {
    const OracleObservables o = oracle_observables(ness, denom_tol);
    s.sz1 = o.sz_left();
    s.szn = o.sz_right();
    s.g2 = o.g2;
  } catch (const UndefinedCorrelator&) {
    const OracleObservables o = oracle_observables(ness, -std::numeric_limits<double>::infinity());
    s.sz1 = o.sz_left();
    s.szn = o.sz_right();
    s.outcome = InstanceOutcome::UndefinedG2;
  }
  return s;
}

std::string fmt_point(const std::string& a, double x, const std::string& b, double y) {
  std::ostringstream os;
  os << a << "=" << x << " " << b << "=" << y;
  return os.str();
}

}  // namespace

double OracleComparison::max_deviation() const {
  if (!agree) return std::numeric_limits<double>::infinity();
  return std::max({d_sz1, d_szn, d_g2});
}

OracleComparison compare_instance(const ChainSpec& chain, const BathSpec& bath, const SolverTolerances& tol,
                                  double denom_tol, bool mutate_bath_sign) {
  const Side a = third_quant_side(chain, bath, tol, denom_tol, mutate_bath_sign);
  const Side b = oracle_side(chain, bath, denom_tol);
  OracleComparison r;
  r.third_quant = a.outcome;
  r.oracle = b.outcome;
  r.agree = a.outcome == b.outcome;
  if (!r.agree || a.outcome == InstanceOutcome::NotUnique) return r;
  r.d_sz1 = std::abs(a.sz1 - b.sz1);
  r.d_szn = std::abs(a.szn - b.szn);
  if (a.outcome == InstanceOutcome::Unique) r.d_g2 = std::abs(a.g2 - b.g2);
  return r;
}

ChainSpec random_chain(ModelKind kind, int n_sites, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto draw = [&](int count) {
    std::vector<double> v(std::max(count, 0));
    for (double& x : v) x = u(rng);
    return v;
  };
  ChainSpec c;
  c.kind = kind;
  c.h = draw(n_sites);
  if (kind == ModelKind::Txy) {
    c.jx = draw(n_sites - 1);
    c.jy = draw(n_sites - 1);
  } else {
    c.b2 = draw(n_sites - 1);
    c.b3 = draw(n_sites - 2);
  }
  return c;
}

BathSpec random_bath(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rate(0.01, 0.5);
  std::uniform_real_distribution<double> occ(0.0, 1.0);
  BathSpec b;
  b.gamma_left = rate(rng);
  b.n_left = occ(rng);
  b.gamma_right = rate(rng);
  b.n_right = occ(rng);
  return b;
}

OracleReport compare_oracle(const SweepConfig& cfg) {
  if (cfg.n_sites > kMaxCompareSites) {
    throw ConfigError("n_sites", "oracle comparison is limited to " + std::to_string(kMaxCompareSites) + " sites");
  }
  OracleReport report;
  auto add = [&](OracleComparison c) {
    if (!c.agree) ++report.disagreements;
    report.max_deviation = std::max(report.max_deviation, c.max_deviation());
    report.rows.push_back(std::move(c));
  };
  for (int i1 = 0; i1 < cfg.param1.count; ++i1) {
    for (int i2 = 0; i2 < cfg.param2.count; ++i2) {
      const double p1 = cfg.param1.value(i1);
      const double p2 = cfg.param2.value(i2);
      OracleComparison c =
          compare_instance(chain_at(cfg, p1, p2), cfg.bath, cfg.solver, cfg.denom_tol, cfg.oracle.mutate_bath_sign);
      c.label = fmt_point(cfg.param1.name, p1, cfg.param2.name, p2);
      add(std::move(c));
    }
  }
  std::mt19937_64 rng(cfg.seed);
  for (int d = 0; d < cfg.oracle.random_draws; ++d) {
    const ChainSpec chain = random_chain(cfg.model, cfg.n_sites, rng);
    const BathSpec bath = random_bath(rng);
    OracleComparison c = compare_instance(chain, bath, cfg.solver, cfg.denom_tol, cfg.oracle.mutate_bath_sign);
    c.label = "draw " + std::to_string(d);
    add(std::move(c));
  }
  return report;
}

}  // namespace ness
