#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridiron/core/types.hpp"
#include "gridiron/model/features.hpp"
#include "gridiron/stats/correlation.hpp"
#include "gridiron/stats/tests.hpp"

namespace gridiron::model {

// Winner against loser for one statistic over decided regular-season games.
struct StatComparison {
  std::string stat;
  std::vector<double> winner;
  std::vector<double> loser;
  std::vector<double> diff;  // winner - loser
  std::optional<stats::TestResult> paired;
  std::optional<stats::TestResult> ks;
};

struct SeasonHomeRate {
  int season = 0;
  int games = 0;  // decided games
  int home_wins = 0;
  double rate() const { return games ? static_cast<double>(home_wins) / games : 0.0; }
};

struct GameDaySummary {
  std::array<StatComparison, kNumTeamStats> comparisons;
  std::vector<SeasonHomeRate> home_by_season;
  double home_rate_mean = 0.0;  // across seasons
  double home_rate_sd = 0.0;
  stats::CorrMatrix correlations;  // league-wide team-game rows
  int decided_games = 0;
};

inline GameDaySummary game_day_summary(const SeasonDataset& ds) {
  GameDaySummary out;
  for (std::size_t j = 0; j < kNumTeamStats; ++j)
    out.comparisons[j].stat = std::string(kTeamStatNames[j]);
  std::map<int, SeasonHomeRate> home;
  std::vector<TeamStatVector> rows;
  for (const auto& g : ds.games()) {
    if (g.is_postseason) continue;
    const auto* hs = ds.find_stat(g.game_id, g.home_team);
    const auto* as = ds.find_stat(g.game_id, g.away_team);
    std::optional<TeamStatVector> hv, av;
    if (hs) hv = team_stat_vector(*hs);
    if (as) av = team_stat_vector(*as);
    if (hv) rows.push_back(*hv);
    if (av) rows.push_back(*av);
    if (g.is_tie()) continue;
    auto& h = home[g.season];
    h.season = g.season;
    h.games += 1;
    h.home_wins += g.home_won();
    if (!hv || !av) continue;
    out.decided_games += 1;
    const auto& w = g.home_won() ? *hv : *av;
    const auto& l = g.home_won() ? *av : *hv;
    for (std::size_t j = 0; j < kNumTeamStats; ++j) {
      auto& c = out.comparisons[j];
      c.winner.push_back(w[j]);
      c.loser.push_back(l[j]);
      c.diff.push_back(w[j] - l[j]);
    }
  }
  if (out.decided_games == 0) throw Error(ErrorCode::MissingStats, "no decided games with stats");
  for (auto& c : out.comparisons) {
    try {
      c.paired = stats::paired_t_test(c.winner, c.loser);
    } catch (const Error&) {
    }
    try {
      c.ks = stats::ks_two_sample(c.winner, c.loser);
    } catch (const Error&) {
    }
  }
  std::vector<double> rates;
  for (const auto& [s, h] : home) {
    out.home_by_season.push_back(h);
    rates.push_back(h.rate());
  }
  auto ms = stats::mean_sd(rates);
  out.home_rate_mean = ms.mean;
  out.home_rate_sd = ms.sd;
  std::vector<stats::NamedColumn> cols;
  for (std::size_t j = 0; j < kNumTeamStats; ++j) {
    stats::NamedColumn c;
    c.label = std::string(kTeamStatNames[j]);
    for (const auto& r : rows) c.values.push_back(r[j]);
    cols.push_back(std::move(c));
  }
  try {
    out.correlations = stats::pearson_matrix(cols);
  } catch (const Error&) {
  }
  return out;
}

}  // namespace gridiron::model
