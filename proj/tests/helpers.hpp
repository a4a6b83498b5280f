#pragma once

#include "ness/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// All 2^N many-body energies of H = sum_k eps_k (b_k^+ b_k - 1/2), ascending.
inline std::vector<double> subset_sums(const std::vector<double>& eps) {
  double ground = 0.0;
  for (double e : eps) ground -= 0.5 * e;
  std::vector<double> out{ground};
  for (double e : eps) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] + e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// 4 x the singular values of A, one per pair, ascending.
inline std::vector<double> one_particle_energies(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const Eigen::VectorXd s = svd.singularValues();
  std::vector<double> out;
  for (Eigen::Index i = 0; i < s.size(); i += 2) out.push_back(4.0 * s(i));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<double> sorted_values(const Eigen::VectorXd& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

inline double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline ness::ChainSpec random_txy(int n, std::mt19937_64& rng) {
  ness::ChainSpec s;
  s.kind = ness::ModelKind::Txy;
  for (int i = 0; i < n; ++i) s.h.push_back(uniform(rng, -1, 1));
  for (int i = 0; i + 1 < n; ++i) {
    s.jx.push_back(uniform(rng, -1, 1));
    s.jy.push_back(uniform(rng, -1, 1));
  }
  return s;
}

inline ness::ChainSpec random_3si(int n, std::mt19937_64& rng) {
  ness::ChainSpec s;
  s.kind = ness::ModelKind::ThreeSpin;
  for (int i = 0; i < n; ++i) s.h.push_back(uniform(rng, -1, 1));
  for (int i = 0; i + 1 < n; ++i) s.b2.push_back(uniform(rng, -1, 1));
  for (int i = 0; i + 2 < n; ++i) s.b3.push_back(uniform(rng, -1, 1));
  return s;
}

inline ness::BathSpec random_bath(std::mt19937_64& rng) {
  return {uniform(rng, 0.01, 0.5), uniform(rng, 0.01, 0.5), uniform(rng, 0, 1), uniform(rng, 0, 1)};
}

/// Random orthogonal matrix from the QR of a Gaussian matrix.
inline Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace testing
