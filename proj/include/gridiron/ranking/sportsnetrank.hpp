#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "gridiron/core/types.hpp"

namespace gridiron::ranking {

// Directed loser -> winner graph of one season up to a cutoff week.
struct WinGraph {
  SeasonWeek through;
  std::vector<TeamCode> teams;         // sorted
  std::vector<double> weight;          // n x n, row = loser, column = winner
  int games_used = 0;
  int latest_week_used = 0;            // provenance: always < through.week

  std::size_t size() const { return teams.size(); }
  double edge(std::size_t from, std::size_t to) const { return weight[from * size() + to]; }
  std::optional<std::size_t> index_of(std::string_view team) const {
    auto it = std::lower_bound(teams.begin(), teams.end(), team);
    if (it == teams.end() || *it != team) return std::nullopt;
    return static_cast<std::size_t>(it - teams.begin());
  }
};

struct WinGraphOptions {
  // Weight each result by its score margin instead of 1.
  bool margin_weighted = false;
};

// Teams are every club appearing in the season's regular-season schedule, so
// teams without a decided game yet still get a node. Ties add no edge.
inline WinGraph build_win_graph(std::span<const GameRecord> games, SeasonWeek through,
                                const WinGraphOptions& opts = {}) {
  WinGraph g;
  g.through = through;
  std::set<TeamCode> teams;
  for (const auto& gm : games) {
    if (gm.season != through.season || gm.is_postseason) continue;
    teams.insert(gm.home_team);
    teams.insert(gm.away_team);
  }
  g.teams.assign(teams.begin(), teams.end());
  const std::size_t n = g.teams.size();
  g.weight.assign(n * n, 0.0);
  for (const auto& gm : games) {
    if (gm.season != through.season || gm.is_postseason || gm.week >= through.week) continue;
    g.games_used += 1;
    g.latest_week_used = std::max(g.latest_week_used, gm.week);
    if (gm.is_tie()) continue;
    auto from = *g.index_of(gm.loser());
    auto to = *g.index_of(gm.winner());
    double w = opts.margin_weighted ? std::abs(gm.home_score - gm.away_score) : 1.0;
    g.weight[from * n + to] += w;
  }
  if (g.games_used == 0)
    throw Error(ErrorCode::NoGames, "no games in season " + std::to_string(through.season) +
                                        " before week " + std::to_string(through.week));
  return g;
}

struct RankTable {
  SeasonWeek key;
  std::vector<TeamCode> teams;  // sorted by team code
  std::vector<double> score;    // aligned with teams
  std::vector<int> rank;        // 1 = strongest
  int iterations = 0;
  double residual = 0.0;        // L1 change of the final iteration
  int latest_week_used = 0;

  std::optional<std::size_t> index_of(std::string_view team) const {
    auto it = std::lower_bound(teams.begin(), teams.end(), team);
    if (it == teams.end() || *it != team) return std::nullopt;
    return static_cast<std::size_t>(it - teams.begin());
  }
  int rank_of(std::string_view team) const {
    auto i = index_of(team);
    if (!i) throw Error(ErrorCode::UnknownTeam, "team " + std::string(team) + " not ranked");
    return rank[*i];
  }
  double score_of(std::string_view team) const {
    auto i = index_of(team);
    if (!i) throw Error(ErrorCode::UnknownTeam, "team " + std::string(team) + " not ranked");
    return score[*i];
  }
};

struct PageRankOptions {
  double damping = 0.85;
  double tol = 1e-10;
  int max_iter = 1000;
};

// One power-iteration step. Each loser passes its mass to the teams that beat
// it in proportion to edge weight; unbeaten teams spread theirs uniformly.
inline std::vector<double> pagerank_step(const WinGraph& g, const std::vector<double>& x,
                                         double damping) {
  const std::size_t n = g.size();
  std::vector<double> next(n, 0.0);
  double dangling = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    double out = 0.0;
    for (std::size_t v = 0; v < n; ++v) out += g.edge(u, v);
    if (out == 0.0) {
      dangling += x[u];
      continue;
    }
    for (std::size_t v = 0; v < n; ++v)
      if (double w = g.edge(u, v); w != 0.0) next[v] += x[u] * w / out;
  }
  const double base = (1.0 - damping) / static_cast<double>(n) +
                      damping * dangling / static_cast<double>(n);
  for (auto& v : next) v = base + damping * v;
  return next;
}

// Ordinal ranks by descending score; scores equal to 12 decimals tie-break on
// team code.
inline std::vector<int> ordinal_ranks(const std::vector<TeamCode>& teams,
                                      const std::vector<double>& score) {
  std::vector<std::size_t> order(teams.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto key = [&](std::size_t i) { return std::llround(score[i] * 1e12); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (key(a) != key(b)) return key(a) > key(b);
    return teams[a] < teams[b];
  });
  std::vector<int> rank(teams.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r) + 1;
  return rank;
}

inline RankTable sportsnetrank(const WinGraph& g, const PageRankOptions& opts = {}) {
  const std::size_t n = g.size();
  if (n == 0) throw Error(ErrorCode::NoGames, "empty win graph");
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  RankTable t;
  t.key = g.through;
  t.teams = g.teams;
  t.latest_week_used = g.latest_week_used;
  for (int it = 1; it <= opts.max_iter; ++it) {
    auto next = pagerank_step(g, x, opts.damping);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff += std::abs(next[i] - x[i]);
    x = std::move(next);
    t.iterations = it;
    t.residual = diff;
    if (diff < opts.tol) {
      t.score = x;
      t.rank = ordinal_ranks(t.teams, t.score);
      return t;
    }
  }
  throw Error(ErrorCode::NonConvergence,
              "PageRank did not converge in " + std::to_string(opts.max_iter) + " iterations");
}

// Positive when the home team ranks higher (smaller ordinal).
inline int rank_diff(const RankTable& t, std::string_view home, std::string_view away) {
  return t.rank_of(away) - t.rank_of(home);
}

// Pre-week snapshots for every (season, week) that has at least one earlier
// game in the same season.
class RankBook {
 public:
  const RankTable* find(SeasonWeek key) const {
    auto it = tables_.find(key);
    return it == tables_.end() ? nullptr : &it->second;
  }
  const RankTable& at(SeasonWeek key) const {
    if (const auto* t = find(key)) return *t;
    throw Error(ErrorCode::MissingRankSnapshot,
                "no rank snapshot for season " + std::to_string(key.season) + " week " +
                    std::to_string(key.week));
  }
  void insert(RankTable t) {
    auto key = t.key;
    tables_.insert_or_assign(key, std::move(t));
  }
  const std::map<SeasonWeek, RankTable>& tables() const { return tables_; }

 private:
  std::map<SeasonWeek, RankTable> tables_;
};

inline RankBook build_rank_book(std::span<const GameRecord> games,
                                const PageRankOptions& opts = {},
                                const WinGraphOptions& graph_opts = {}) {
  std::map<int, std::set<int>> weeks;
  for (const auto& g : games)
    if (!g.is_postseason) weeks[g.season].insert(g.week);
  RankBook book;
  for (const auto& [season, ws] : weeks) {
    int first = *ws.begin();
    for (int w : ws) {
      if (w == first) continue;
      book.insert(sportsnetrank(build_win_graph(games, {season, w}, graph_opts), opts));
    }
  }
  return book;
}

}  // namespace gridiron::ranking
