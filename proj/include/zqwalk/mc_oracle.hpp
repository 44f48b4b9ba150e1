#pragma once

// Brute-force and Monte Carlo references: seeded path simulation, empirical
// distributions, dense matrix powers and binomial z-score comparison.

#include <Eigen/Dense>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "zqwalk/product_chain.hpp"

namespace zqwalk {

using OutcomeKey = std::vector<int>;

struct EmpiricalDist {
  std::map<OutcomeKey, long long> counts;
  long long total = 0;
  std::uint64_t seed = 0;

  void add(const OutcomeKey& key, long long n = 1) {
    counts[key] += n;
    total += n;
  }

  void merge(const EmpiricalDist& other) {
    for (const auto& [k, n] : other.counts) add(k, n);
  }

  double frequency(const OutcomeKey& key) const {
    auto it = counts.find(key);
    return it == counts.end() || total == 0 ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
  }

  friend bool operator==(const EmpiricalDist&, const EmpiricalDist&) = default;
};

enum class OutcomeMode { kEndState, kGroupedCounts };

/// Simulate n_paths independent t-step paths from x0. Path i uses seed ^ i.
inline EmpiricalDist simulate_paths(const IncrementDist& incr, const StatePoint& x0, int t, long long n_paths,
                                    std::uint64_t seed, OutcomeMode mode = OutcomeMode::kEndState) {
  detail::require(n_paths >= 1, ErrorKind::kParameter, "need at least one path");
  detail::require(t >= 0, ErrorKind::kParameter, "t must be >= 0");
  detail::require(x0.q() == incr.q() && x0.d() == incr.d(), ErrorKind::kShape, "start state does not match law");
  IncrementSampler sampler(incr);
  EmpiricalDist out;
  out.seed = seed;
  const int q = x0.q();
  std::vector<int> x;
  for (long long i = 0; i < n_paths; ++i) {
    std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(i));
    x = x0.values();
    for (int s = 0; s < t; ++s) {
      const auto v = sampler(rng);
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = mod(x[k] + v[k], q);
    }
    if (mode == OutcomeMode::kEndState) out.add(x);
    else out.add(counts_of(x, q).counts());
  }
  return out;
}

/// One-step matrix from direct lookup P(V = y - x), raised to the t-th power.
inline Eigen::MatrixXd matrix_power_reference(const IncrementDist& incr, int t) {
  detail::require(t >= 0, ErrorKind::kParameter, "t must be >= 0");
  const int q = incr.q();
  const int d = incr.d();
  const std::size_t n = checked_state_count(q, d, 1u << 12);
  std::vector<double> step(n);
  for (std::size_t i = 0; i < n; ++i) step[i] = increment_pmf(incr, StatePoint::from_index(i, q, d).values());
  const auto N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd P(N, N);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = StatePoint::from_index(i, q, d);
    for (std::size_t j = 0; j < n; ++j) {
      P(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          step[difference(x, StatePoint::from_index(j, q, d)).linear_index()];
    }
  }
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(N, N);
  for (int e = t; e > 0; e >>= 1) {
    if (e & 1) R = R * P;
    if (e > 1) P = P * P;
  }
  return R;
}

struct ComparisonReport {
  double max_abs_dev = 0.0;
  double max_z = 0.0;
  long long n_cells = 0;

  bool passes(double z_threshold = 5.0) const { return max_z < z_threshold; }
};

/// Per-cell binomial z-scores of observed frequencies against expected probabilities.
inline ComparisonReport compare(const std::map<OutcomeKey, double>& expected, const EmpiricalDist& observed) {
  detail::require(observed.total > 0, ErrorKind::kParameter, "empty empirical distribution");
  const double N = static_cast<double>(observed.total);
  ComparisonReport rep;
  auto cell = [&](double p, long long count) {
    const double f = static_cast<double>(count) / N;
    const double dev = std::abs(f - p);
    const double sd = std::sqrt(std::max(0.0, p * (1.0 - p)) / N);
    double z = 0.0;
    if (sd > 0.0) z = dev / sd;
    else if (dev > 1e-12) z = std::numeric_limits<double>::infinity();
    rep.max_abs_dev = std::max(rep.max_abs_dev, dev);
    rep.max_z = std::max(rep.max_z, z);
    ++rep.n_cells;
  };
  for (const auto& [key, count] : observed.counts) {
    auto it = expected.find(key);
    if (count > 0 && (it == expected.end() || it->second <= 0.0)) {
      detail::fail(ErrorKind::kImpossibleOutcome, "observed outcome (" + format_vector(key) + ") has probability zero");
    }
  }
  for (const auto& [key, p] : expected) {
    auto it = observed.counts.find(key);
    cell(p, it == observed.counts.end() ? 0 : it->second);
  }
  return rep;
}

inline nlohmann::json report_to_json(const ComparisonReport& r) {
  return {{"max_abs_dev", r.max_abs_dev}, {"max_z", r.max_z}, {"n_cells", r.n_cells}};
}

/// End-state probabilities P^t(x0, .) from a displacement kernel.
inline std::map<OutcomeKey, double> end_state_table(const std::vector<double>& kernel, const StatePoint& x0) {
  std::map<OutcomeKey, double> out;
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const auto delta = StatePoint::from_index(i, x0.q(), x0.d());
    // spectral round-off is not probability mass
    out[add(x0, delta.values()).values()] += kernel[i] > 1e-12 ? kernel[i] : 0.0;
  }
  return out;
}

}  // namespace zqwalk
