#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gridiron/error.hpp"
#include "gridiron/fpm/perf_matrix.hpp"
#include "gridiron/rng.hpp"

namespace gridiron::fpm {

struct BootstrapConfig {
  int B = 1000;
  int k = 5;
  double recency_multiplier = 2.0;
  double corr_threshold = 0.3;
  double alpha = 0.05;
  std::uint64_t seed = kDefaultSeed;
  // Pair every home resample with away resample 1, as the printed input rule reads.
  bool compat_x21 = false;

  void validate() const {
    if (B < 1) throw Error(ErrorCode::BadParams, "bootstrap count must be >= 1");
    if (k < 1) throw Error(ErrorCode::BadParams, "recency window must be >= 1");
    if (!(recency_multiplier >= 1.0))
      throw Error(ErrorCode::BadParams, "recency multiplier must be >= 1");
    if (!(corr_threshold >= 0.0 && corr_threshold <= 1.0))
      throw Error(ErrorCode::BadParams, "correlation threshold must be in [0, 1]");
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::BadParams, "alpha must be in (0, 1)");
  }
};

// Normalized draw probabilities: the most recent min(k, n) rows get the
// multiplier, older rows weight 1.
inline std::vector<double> recency_weights(std::size_t n, int k, double multiplier) {
  std::vector<double> w(n, 1.0);
  std::size_t recent = std::min(n, static_cast<std::size_t>(std::max(k, 0)));
  for (std::size_t i = n - recent; i < n; ++i) w[i] = multiplier;
  double total = 0.0;
  for (double v : w) total += v;
  for (auto& v : w) v /= total;
  return w;
}

// Row index drawn from cumulative probabilities.
inline std::size_t draw_row(const std::vector<double>& cumulative, SplitMix64& g) {
  double u = uniform01(g) * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

// B synthetic stat vectors for one team ahead of one game. Resample j draws
// from substream (seed, team, game_key, j); each block copies all of its
// stats from a single drawn row.
inline std::vector<TeamStatVector> bootstrap_vectors(const PerfMatrix& m,
                                                     const BootstrapConfig& cfg,
                                                     const Blocks& blocks,
                                                     std::uint64_t game_key) {
  if (m.rows.empty()) throw Error(ErrorCode::EmptyMatrix, "empty performance matrix for " + m.team);
  cfg.validate();
  auto w = recency_weights(m.rows.size(), cfg.k, cfg.recency_multiplier);
  std::vector<double> cum(w.size());
  std::partial_sum(w.begin(), w.end(), cum.begin());
  const std::uint64_t team_key = fnv1a64(m.team);
  std::vector<TeamStatVector> out(static_cast<std::size_t>(cfg.B));
  for (int j = 0; j < cfg.B; ++j) {
    auto g = substream(cfg.seed, {team_key, game_key, static_cast<std::uint64_t>(j)});
    auto& v = out[static_cast<std::size_t>(j)];
    for (const auto& block : blocks) {
      const auto& row = m.rows[draw_row(cum, g)];
      for (auto c : block) v[c] = row[c];
    }
  }
  return out;
}

}  // namespace gridiron::fpm
