#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "gridiron/core/types.hpp"
#include "gridiron/model/features.hpp"
#include "gridiron/stats/correlation.hpp"

namespace gridiron::fpm {

using model::kNumTeamStats;
using model::TeamStatVector;

// One team's per-game statistics this season, strictly before a cutoff week.
struct PerfMatrix {
  TeamCode team;
  SeasonWeek through;
  std::vector<TeamStatVector> rows;  // chronological
  std::vector<std::string> game_ids;  // provenance, aligned with rows
  std::vector<int> weeks;
  int dropped_undefined_ratio = 0;

  std::size_t size() const { return rows.size(); }
};

inline PerfMatrix performance_matrix(const SeasonDataset& ds, std::string_view team,
                                     SeasonWeek through) {
  std::vector<const GameRecord*> games;
  for (const auto& g : ds.games())
    if (g.season == through.season && !g.is_postseason && g.week < through.week &&
        g.involves(team))
      games.push_back(&g);
  std::stable_sort(games.begin(), games.end(), [](const GameRecord* a, const GameRecord* b) {
    if (a->week != b->week) return a->week < b->week;
    return a->game_id < b->game_id;
  });
  PerfMatrix m;
  m.team = std::string(team);
  m.through = through;
  for (const auto* g : games) {
    const auto* s = ds.find_stat(g->game_id, team);
    if (!s) throw Error(ErrorCode::MissingStats, "no stats for " + std::string(team) + " in " + g->game_id);
    auto v = model::team_stat_vector(*s);
    if (!v) {
      m.dropped_undefined_ratio += 1;
      continue;
    }
    m.rows.push_back(*v);
    m.game_ids.push_back(g->game_id);
    m.weeks.push_back(g->week);
  }
  if (m.rows.empty())
    throw Error(ErrorCode::NoHistory, std::string(team) + " has no games before week " +
                                          std::to_string(through.week) + " of " +
                                          std::to_string(through.season));
  return m;
}

// Partition of the stat columns; each block is resampled jointly.
using Blocks = std::vector<std::vector<std::size_t>>;

inline Blocks singleton_blocks() {
  Blocks b;
  for (std::size_t i = 0; i < kNumTeamStats; ++i) b.push_back({i});
  return b;
}

// Connected components of the graph joining stats with |rho| >= threshold and
// p < 0.05 over league-wide team-game rows.
inline Blocks correlation_blocks(std::span<const TeamStatVector> rows, double threshold) {
  if (rows.size() < 30)
    throw Error(ErrorCode::TooFewRows, "correlation blocks need at least 30 rows, got " +
                                           std::to_string(rows.size()));
  std::vector<stats::NamedColumn> cols;
  for (std::size_t j = 0; j < kNumTeamStats; ++j) {
    stats::NamedColumn c;
    c.label = std::string(model::kTeamStatNames[j]);
    for (const auto& r : rows) c.values.push_back(r[j]);
    cols.push_back(std::move(c));
  }
  auto cm = stats::pearson_matrix(cols);
  std::array<std::size_t, kNumTeamStats> parent{};
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < kNumTeamStats; ++a)
    for (std::size_t b = a + 1; b < kNumTeamStats; ++b)
      if (std::abs(cm.rho[a][b]) >= threshold && cm.p[a][b] < 0.05) {
        auto ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
  Blocks out;
  std::array<int, kNumTeamStats> slot;
  slot.fill(-1);
  for (std::size_t j = 0; j < kNumTeamStats; ++j) {
    auto r = find(j);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(j);
  }
  return out;
}

// Every usable regular-season team-game row of the given seasons.
inline std::vector<TeamStatVector> league_rows(const SeasonDataset& ds,
                                               std::span<const int> seasons) {
  std::vector<TeamStatVector> out;
  for (const auto& g : ds.games()) {
    if (g.is_postseason || std::find(seasons.begin(), seasons.end(), g.season) == seasons.end())
      continue;
    for (const auto* team : {&g.home_team, &g.away_team})
      if (const auto* s = ds.find_stat(g.game_id, *team))
        if (auto v = model::team_stat_vector(*s)) out.push_back(*v);
  }
  return out;
}

}  // namespace gridiron::fpm
