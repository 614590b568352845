#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gridiron/fpm/bootstrap.hpp"
#include "gridiron/model/bt_model.hpp"
#include "gridiron/ranking/sportsnetrank.hpp"
#include "gridiron/stats/tests.hpp"

namespace gridiron::fpm {

enum class Decision { HomeWin, AwayWin, Tie };

constexpr std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::HomeWin: return "home";
    case Decision::AwayWin: return "away";
    case Decision::Tie: return "tie";
  }
  return "unknown";
}

inline Decision actual_outcome(const GameRecord& g) {
  if (g.is_tie()) return Decision::Tie;
  return g.home_won() ? Decision::HomeWin : Decision::AwayWin;
}

// Type-7 (linear interpolation) sample quantile of sorted data.
inline double quantile_sorted(const std::vector<double>& s, double q) {
  if (s.empty()) return 0.0;
  double h = (static_cast<double>(s.size()) - 1.0) * q;
  auto lo = static_cast<std::size_t>(std::floor(h));
  auto hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

struct PredictionResult {
  std::string game_id;
  int season = 0;
  int week = 0;
  TeamCode home;
  TeamCode away;
  double p_home_mean = 0.5;
  double p_sd = 0.0;
  double p_q025 = 0.5;
  double p_q975 = 0.5;
  double t_statistic = 0.0;
  double p_value = 1.0;
  Decision decision = Decision::Tie;
  // Provenance of every input, kept for the leakage audit.
  std::vector<std::string> home_history;
  std::vector<std::string> away_history;
  int rank_latest_week = 0;
  int rank_diff = 0;

  friend bool operator==(const PredictionResult&, const PredictionResult&) = default;
};

// H0: mean(P1) = 0.5. With zero spread the sample is its own answer.
inline stats::TestResult fpm_test(const std::vector<double>& p1) {
  auto [mean, sd] = stats::mean_sd(p1);
  if (sd == 0.0) {
    stats::TestResult r;
    r.method = stats::TestMethod::OneSampleT;
    r.estimate = mean - 0.5;
    r.df = static_cast<double>(p1.size()) - 1.0;
    r.statistic = 0.0;
    r.p_value = mean == 0.5 ? 1.0 : 0.0;
    return r;
  }
  return stats::one_sample_t_test(p1, 0.5);
}

// The same hypothesis as two sets, P1 against P2 = 1 - P1, by paired t-test.
inline stats::TestResult two_set_test(const std::vector<double>& p1) {
  std::vector<double> p2(p1.size());
  for (std::size_t i = 0; i < p1.size(); ++i) p2[i] = 1.0 - p1[i];
  return stats::paired_t_test(p1, p2);
}

inline Decision decide(double p_mean, double p_value, double alpha) {
  if (p_value >= alpha) return Decision::Tie;
  return p_mean > 0.5 ? Decision::HomeWin : Decision::AwayWin;
}

// P1 for a game from already-built matrices and a known rank differential.
inline std::vector<double> win_probability_set(const model::FittedBTModel& m,
                                               const PerfMatrix& home, const PerfMatrix& away,
                                               int d_rank, const BootstrapConfig& cfg,
                                               const Blocks& blocks, std::uint64_t game_key) {
  auto hv = bootstrap_vectors(home, cfg, blocks, game_key);
  auto av = bootstrap_vectors(away, cfg, blocks, game_key);
  std::vector<double> p1(hv.size());
  for (std::size_t j = 0; j < hv.size(); ++j) {
    const auto& a = cfg.compat_x21 ? av.front() : av[j];
    p1[j] = model::predict_prob(m, model::differential(hv[j], a, d_rank));
  }
  return p1;
}

inline PredictionResult predict_game(const SeasonDataset& ds, const model::FittedBTModel& m,
                                     const ranking::RankBook& book, const GameRecord& game,
                                     const BootstrapConfig& cfg, const Blocks& blocks) {
  cfg.validate();
  if (cfg.B < 2)
    throw Error(ErrorCode::DegenerateSampleSize, "the test needs at least 2 bootstrap samples");
  SeasonWeek at{game.season, game.week};
  auto home = performance_matrix(ds, game.home_team, at);
  auto away = performance_matrix(ds, game.away_team, at);
  const auto& table = book.at(at);

  PredictionResult r;
  r.game_id = game.game_id;
  r.season = game.season;
  r.week = game.week;
  r.home = game.home_team;
  r.away = game.away_team;
  r.rank_diff = ranking::rank_diff(table, game.home_team, game.away_team);
  r.rank_latest_week = table.latest_week_used;
  r.home_history = home.game_ids;
  r.away_history = away.game_ids;

  auto p1 = win_probability_set(m, home, away, r.rank_diff, cfg, blocks, fnv1a64(game.game_id));
  auto [mean, sd] = stats::mean_sd(p1);
  r.p_home_mean = mean;
  r.p_sd = sd;
  std::sort(p1.begin(), p1.end());
  r.p_q025 = quantile_sorted(p1, 0.025);
  r.p_q975 = quantile_sorted(p1, 0.975);
  auto t = fpm_test(p1);
  r.t_statistic = t.statistic;
  r.p_value = t.p_value;
  r.decision = decide(mean, r.p_value, cfg.alpha);
  return r;
}

// Running records of a season through (not including) a week.
struct Record {
  int wins = 0;
  int losses = 0;
  int ties = 0;

  int games() const { return wins + losses + ties; }
  double win_pct() const { return games() ? (wins + 0.5 * ties) / games() : 0.5; }
};

struct Standings {
  SeasonWeek through;
  std::map<TeamCode, Record, std::less<>> records;
  int latest_week_used = 0;

  Record of(std::string_view team) const {
    auto it = records.find(team);
    return it == records.end() ? Record{} : it->second;
  }
};

inline Standings standings(std::span<const GameRecord> games, SeasonWeek through) {
  Standings s;
  s.through = through;
  for (const auto& g : games) {
    if (g.season != through.season || g.is_postseason || g.week >= through.week) continue;
    s.latest_week_used = std::max(s.latest_week_used, g.week);
    auto& h = s.records[g.home_team];
    auto& a = s.records[g.away_team];
    if (g.is_tie()) {
      ++h.ties;
      ++a.ties;
    } else if (g.home_won()) {
      ++h.wins;
      ++a.losses;
    } else {
      ++a.wins;
      ++h.losses;
    }
  }
  return s;
}

// Better running win percentage; the home team on equal records.
inline Decision baseline_predict(const Standings& s, const GameRecord& g) {
  return s.of(g.away_team).win_pct() > s.of(g.home_team).win_pct() ? Decision::AwayWin
                                                                     : Decision::HomeWin;
}

}  // namespace gridiron::fpm
