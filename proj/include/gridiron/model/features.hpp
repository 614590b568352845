#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridiron/core/types.hpp"
#include "gridiron/ranking/sportsnetrank.hpp"

namespace gridiron::model {

inline constexpr std::size_t kNumFeatures = 6;
inline constexpr std::size_t kNumCoefficients = kNumFeatures + 1;

enum Feature : std::size_t {
  kTotalYards = 0,
  kPenaltyYards,
  kTurnovers,
  kPossession,
  kRatio,
  kRank,
};

inline constexpr std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "d_total_yards", "d_penalty_yards", "d_turnovers",
    "d_possession",  "d_ratio",         "d_rank"};

inline constexpr std::array<std::string_view, kNumCoefficients> kCoefficientNames = {
    "intercept",    "d_total_yards", "d_penalty_yards", "d_turnovers",
    "d_possession", "d_ratio",       "d_rank"};

using FeatureVector = std::array<double, kNumFeatures>;

// Home-minus-away differentials of one game.
struct FeatureDiff {
  std::string game_id;
  int season = 0;
  int week = 0;
  FeatureVector x{};
  int label = 0;  // 1 = home won

  double dy_total() const { return x[kTotalYards]; }
  double dy_penalty() const { return x[kPenaltyYards]; }
  double d_turnovers() const { return x[kTurnovers]; }
  double d_possession() const { return x[kPossession]; }
  double d_ratio() const { return x[kRatio]; }
  double d_rank() const { return x[kRank]; }
};

// The five per-team game statistics the model and the bootstrap work on.
inline constexpr std::size_t kNumTeamStats = 5;
using TeamStatVector = std::array<double, kNumTeamStats>;

inline constexpr std::array<std::string_view, kNumTeamStats> kTeamStatNames = {
    "total_yards", "penalty_yards", "turnovers", "possession_seconds", "ratio"};

inline std::optional<TeamStatVector> team_stat_vector(const TeamGameStat& s) {
  auto r = s.pass_ratio();
  if (!r) return std::nullopt;
  return TeamStatVector{static_cast<double>(s.total_yards),
                        static_cast<double>(s.penalty_yards),
                        static_cast<double>(s.turnovers),
                        static_cast<double>(s.possession_seconds), *r};
}

inline FeatureVector differential(const TeamStatVector& home, const TeamStatVector& away,
                                  double d_rank) {
  FeatureVector x{};
  for (std::size_t i = 0; i < kNumTeamStats; ++i) x[i] = home[i] - away[i];
  x[kRank] = d_rank;
  return x;
}

struct FeatureSet {
  std::vector<FeatureDiff> rows;
  int excluded_ties = 0;
  int excluded_first_week = 0;  // no earlier game in the season to rank from
  int excluded_undefined_ratio = 0;
  int excluded_postseason = 0;
};

// One row per regular-season game. Ties, season-opening weeks (no rank
// snapshot can exist) and games where a side gained no offensive yards are
// counted and skipped.
inline FeatureSet build_features(const SeasonDataset& ds, const ranking::RankBook& book) {
  std::map<int, int> first_week;
  for (const auto& g : ds.games()) {
    if (g.is_postseason) continue;
    auto [it, inserted] = first_week.emplace(g.season, g.week);
    if (!inserted) it->second = std::min(it->second, g.week);
  }
  FeatureSet out;
  for (const auto& g : ds.games()) {
    if (g.is_postseason) {
      ++out.excluded_postseason;
      continue;
    }
    if (g.is_tie()) {
      ++out.excluded_ties;
      continue;
    }
    const auto* hs = ds.find_stat(g.game_id, g.home_team);
    const auto* as = ds.find_stat(g.game_id, g.away_team);
    if (!hs || !as) throw Error(ErrorCode::MissingStats, "no stats for game " + g.game_id);
    const auto* table = book.find({g.season, g.week});
    if (!table) {
      if (g.week == first_week[g.season]) {
        ++out.excluded_first_week;
        continue;
      }
      throw Error(ErrorCode::MissingRankSnapshot,
                  "no rank snapshot for " + g.game_id + " (season " +
                      std::to_string(g.season) + ", week " + std::to_string(g.week) + ")");
    }
    auto hv = team_stat_vector(*hs);
    auto av = team_stat_vector(*as);
    if (!hv || !av) {
      ++out.excluded_undefined_ratio;
      continue;
    }
    FeatureDiff row;
    row.game_id = g.game_id;
    row.season = g.season;
    row.week = g.week;
    row.x = differential(*hv, *av, ranking::rank_diff(*table, g.home_team, g.away_team));
    row.label = g.home_won() ? 1 : 0;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace gridiron::model
