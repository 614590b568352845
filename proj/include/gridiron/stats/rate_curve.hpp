#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gridiron/error.hpp"

namespace gridiron::stats {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

// Wilson score interval for k successes in n trials.
inline Interval wilson_interval(long long k, long long n, double z = kZ95) {
  if (n <= 0) return {0.0, 1.0};
  double nn = static_cast<double>(n);
  double p = static_cast<double>(k) / nn;
  double z2 = z * z;
  double denom = 1.0 + z2 / nn;
  double center = (p + z2 / (2.0 * nn)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (k == 0) ci.low = 0.0;
  if (k == n) ci.high = 1.0;
  ci.low = std::min(ci.low, p);
  ci.high = std::max(ci.high, p);
  return ci;
}

struct RateEvent {
  double value = 0.0;
  bool success = false;
};

// Binned success rates over half-open bins [edge_i, edge_{i+1}).
struct RateCurve {
  std::vector<double> bin_edges;
  std::vector<long long> successes;
  std::vector<long long> trials;
  std::vector<std::optional<double>> rate;
  std::vector<std::optional<double>> ci_low;
  std::vector<std::optional<double>> ci_high;

  std::size_t bins() const { return trials.size(); }

  std::optional<std::size_t> bin_of(double value) const {
    if (bin_edges.size() < 2 || value < bin_edges.front() || value >= bin_edges.back())
      return std::nullopt;
    auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), value);
    return static_cast<std::size_t>(it - bin_edges.begin()) - 1;
  }

  std::optional<double> rate_at(double value) const {
    auto b = bin_of(value);
    if (!b) return std::nullopt;
    return rate[*b];
  }

  long long trials_at(double value) const {
    auto b = bin_of(value);
    return b ? trials[*b] : 0;
  }

  std::optional<std::size_t> first_populated() const {
    for (std::size_t i = 0; i < bins(); ++i)
      if (trials[i] > 0) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> last_populated() const {
    for (std::size_t i = bins(); i-- > 0;)
      if (trials[i] > 0) return i;
    return std::nullopt;
  }

  // Rate of the populated bin nearest to `value` (ties go to the lower bin).
  std::optional<double> nearest_rate(double value) const {
    std::optional<std::size_t> best;
    double best_dist = 0.0;
    for (std::size_t i = 0; i < bins(); ++i) {
      if (trials[i] == 0) continue;
      double lo = bin_edges[i], hi = bin_edges[i + 1];
      double dist = value < lo ? lo - value : (value >= hi ? value - hi : 0.0);
      if (!best || dist < best_dist) {
        best = i;
        best_dist = dist;
      }
    }
    if (!best) return std::nullopt;
    return rate[*best];
  }

  long long total_trials() const {
    long long t = 0;
    for (auto v : trials) t += v;
    return t;
  }
  long long total_successes() const {
    long long s = 0;
    for (auto v : successes) s += v;
    return s;
  }
};

// Evenly spaced edges from `lo`, stepping by `width` until `hi` is covered.
inline std::vector<double> uniform_edges(double lo, double hi, double width) {
  if (!(width > 0.0) || !(hi > lo))
    throw Error(ErrorCode::BadEdges, "bin width must be positive and hi > lo");
  std::vector<double> edges;
  for (int i = 0;; ++i) {
    double e = lo + i * width;
    edges.push_back(e);
    if (e >= hi) break;
  }
  return edges;
}

inline RateCurve binned_rate(std::span<const RateEvent> events,
                             std::span<const double> bin_edges) {
  if (bin_edges.size() < 2)
    throw Error(ErrorCode::BadEdges, "need at least two bin edges");
  for (std::size_t i = 1; i < bin_edges.size(); ++i)
    if (!(bin_edges[i] > bin_edges[i - 1]))
      throw Error(ErrorCode::BadEdges, "bin edges must be strictly increasing");

  RateCurve c;
  c.bin_edges.assign(bin_edges.begin(), bin_edges.end());
  std::size_t nb = bin_edges.size() - 1;
  c.successes.assign(nb, 0);
  c.trials.assign(nb, 0);
  for (const auto& e : events) {
    auto b = c.bin_of(e.value);
    if (!b) continue;
    c.trials[*b] += 1;
    if (e.success) c.successes[*b] += 1;
  }
  c.rate.resize(nb);
  c.ci_low.resize(nb);
  c.ci_high.resize(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    if (c.trials[i] == 0) continue;
    c.rate[i] = static_cast<double>(c.successes[i]) / static_cast<double>(c.trials[i]);
    auto ci = wilson_interval(c.successes[i], c.trials[i]);
    c.ci_low[i] = ci.low;
    c.ci_high[i] = ci.high;
  }
  return c;
}

}  // namespace gridiron::stats
