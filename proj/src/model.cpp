#include "ness/model.hpp"

#include "ness/error.hpp"

#include <cmath>
#include <string>

namespace ness {

namespace {

void require_length(const std::vector<double>& values, std::size_t expected, const char* name) {
  if (values.size() != expected) {
    throw SpecificationError(std::string(name) + " has length " + std::to_string(values.size()) +
                             ", expected " + std::to_string(expected));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw SpecificationError(std::string(name) + " contains a non-finite entry");
  }
}

void require_empty(const std::vector<double>& values, const char* name, ModelKind kind) {
  if (!values.empty()) {
    throw SpecificationError(std::string(name) + " must be empty for a " + std::string(to_string(kind)) +
                             " chain");
  }
}

std::size_t bond_count(int n) { return n > 1 ? static_cast<std::size_t>(n - 1) : 0; }
std::size_t centre_count(int n) { return n > 2 ? static_cast<std::size_t>(n - 2) : 0; }

void set_pair(Eigen::MatrixXd& a, int j, int k, double value) {
  a(j, k) += value;
  a(k, j) -= value;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Txy:
      return "txy";
    case ModelKind::ThreeSpin:
      return "3si";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view text) {
  if (text == "txy") return ModelKind::Txy;
  if (text == "3si") return ModelKind::ThreeSpin;
  throw SpecificationError("unknown model kind '" + std::string(text) + "' (expected txy or 3si)");
}

void ChainSpec::validate() const {
  const int n = n_sites();
  if (n < 1) throw SpecificationError("a chain needs at least one site");
  require_length(h, static_cast<std::size_t>(n), "h");
  if (kind == ModelKind::Txy) {
    require_length(jx, bond_count(n), "jx");
    require_length(jy, bond_count(n), "jy");
    require_empty(b2, "b2", kind);
    require_empty(b3, "b3", kind);
  } else {
    require_length(b2, bond_count(n), "b2");
    require_length(b3, centre_count(n), "b3");
    require_empty(jx, "jx", kind);
    require_empty(jy, "jy", kind);
  }
}

ChainSpec ChainSpec::uniform_txy(int n_sites, double h, double jx, double jy) {
  if (n_sites < 1) throw SpecificationError("a chain needs at least one site");
  ChainSpec spec;
  spec.kind = ModelKind::Txy;
  spec.h.assign(n_sites, h);
  spec.jx.assign(bond_count(n_sites), jx);
  spec.jy.assign(bond_count(n_sites), jy);
  return spec;
}

ChainSpec ChainSpec::uniform_3si(int n_sites, double j, double lambda1, double lambda2) {
  if (n_sites < 1) throw SpecificationError("a chain needs at least one site");
  ChainSpec spec;
  spec.kind = ModelKind::ThreeSpin;
  spec.h.assign(n_sites, j);
  spec.b2.assign(bond_count(n_sites), j * lambda1);
  spec.b3.assign(centre_count(n_sites), j * lambda2);
  return spec;
}

EndRates end_rates(double gamma, double n_th) {
  const double down = gamma * (n_th + 1.0);
  const double up = gamma * n_th;
  return {down, up, up + down, up - down};
}

void BathSpec::validate() const {
  for (double v : {gamma_left, gamma_right, n_left, n_right}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw SpecificationError("bath rates and occupations must be finite and nonnegative");
    }
  }
}

MajoranaForm build_txy_majorana(const ChainSpec& spec) {
  if (spec.kind != ModelKind::Txy) throw SpecificationError("build_txy_majorana needs a TXY chain");
  spec.validate();
  const int n = spec.n_sites();
  MajoranaForm form{n, Eigen::MatrixXd::Zero(2 * n, 2 * n)};
  for (int i = 0; i < n; ++i) set_pair(form.a, 2 * i, 2 * i + 1, -0.5 * spec.h[i]);
  for (int i = 0; i + 1 < n; ++i) {
    set_pair(form.a, 2 * i + 1, 2 * i + 2, -0.5 * spec.jx[i]);
    set_pair(form.a, 2 * i, 2 * i + 3, 0.5 * spec.jy[i]);
  }
  return form;
}

MajoranaForm build_3si_majorana(const ChainSpec& spec) {
  if (spec.kind != ModelKind::ThreeSpin) throw SpecificationError("build_3si_majorana needs a 3SI chain");
  spec.validate();
  const int n = spec.n_sites();
  MajoranaForm form{n, Eigen::MatrixXd::Zero(2 * n, 2 * n)};
  for (int i = 0; i < n; ++i) set_pair(form.a, 2 * i, 2 * i + 1, -0.5 * spec.h[i]);
  for (int i = 0; i + 1 < n; ++i) set_pair(form.a, 2 * i + 1, 2 * i + 2, -0.5 * spec.b2[i]);
  // sx_{c-1} sz_c sx_{c+1} -> -i w_{2c-2} w_{2c+1} (one-based c); zero-based centre c = m + 1.
  for (int m = 0; m + 2 < n; ++m) set_pair(form.a, 2 * m + 1, 2 * m + 4, -0.5 * spec.b3[m]);
  return form;
}

MajoranaForm build_majorana(const ChainSpec& spec) {
  return spec.kind == ModelKind::Txy ? build_txy_majorana(spec) : build_3si_majorana(spec);
}

ChainSpec attach_auxiliary(const ChainSpec& bulk, double end_bond_scale, EndFields end_fields) {
  if (!(end_bond_scale >= 0.0) || !std::isfinite(end_bond_scale)) {
    throw SpecificationError("end_bond_scale must be finite and nonnegative");
  }
  bulk.validate();
  const double s = end_bond_scale;
  ChainSpec out;
  out.kind = bulk.kind;
  out.h.reserve(bulk.h.size() + 2);
  out.h.push_back(end_fields.left);
  out.h.insert(out.h.end(), bulk.h.begin(), bulk.h.end());
  out.h.push_back(end_fields.right);

  auto padded = [s](const std::vector<double>& inner) {
    std::vector<double> v;
    v.reserve(inner.size() + 2);
    v.push_back(s * inner.front());
    v.insert(v.end(), inner.begin(), inner.end());
    v.push_back(s * inner.back());
    return v;
  };

  if (bulk.kind == ModelKind::Txy) {
    if (bulk.jx.empty()) throw SpecificationError("auxiliary spins need a bulk with at least one bond");
    out.jx = padded(bulk.jx);
    out.jy = padded(bulk.jy);
  } else {
    if (bulk.b3.empty()) {
      throw SpecificationError("auxiliary spins on a 3SI chain need a bulk with at least three sites");
    }
    out.b2 = padded(bulk.b2);
    // The new centres next to each auxiliary spin inherit the scaled edge term.
    out.b3 = padded(bulk.b3);
  }
  out.validate();
  return out;
}

ReducedParams reduced_params(double jx, double jy, double h) {
  const double sum = jx + jy;
  if (sum == 0.0) throw DegenerateParameterization("jx + jy = 0 has no reduced parametrisation");
  return {(jx - jy) / sum, h / sum};
}

TxyCouplings from_reduced(double gamma, double h_bar, double scale) {
  if (scale == 0.0) throw DegenerateParameterization("coupling scale jx + jy must be nonzero");
  return {0.5 * scale * (1.0 + gamma), 0.5 * scale * (1.0 - gamma), h_bar * scale};
}

DualParams duality_map(double h, double jx, double jy) {
  if (jx == 0.0) throw DegenerateParameterization("duality map needs jx != 0");
  return {h / jx, -jy / jx};
}

}  // namespace ness
