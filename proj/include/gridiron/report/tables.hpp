#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gridiron/core/table.hpp"
#include "gridiron/core/validate.hpp"
#include "gridiron/decision/diagnostics.hpp"
#include "gridiron/decision/fourth_down.hpp"
#include "gridiron/decision/pat.hpp"
#include "gridiron/fpm/evaluate.hpp"
#include "gridiron/model/bt_model.hpp"
#include "gridiron/model/cross_validate.hpp"
#include "gridiron/model/game_day.hpp"
#include "gridiron/ranking/sportsnetrank.hpp"

// Tabular views of analysis results, one per emitted file.
namespace gridiron::report {

inline Table validation_table(const ValidationReport& rep) {
  Table t{{"severity", "code", "message"}, {}};
  for (const auto& e : rep.errors) t.add("error", e.code, e.message);
  for (const auto& w : rep.warnings) t.add("warning", w.code, w.message);
  return t;
}

inline Table pat_team_table(const std::vector<decision::PatTeamRow>& rows) {
  Table t{{"team", "two_point_successes", "two_point_attempts", "kick_successes",
           "kick_attempts", "expected_benefit"},
          {}};
  for (const auto& r : rows)
    t.add(r.team, r.rates.two_point.successes, r.rates.two_point.attempts,
          r.rates.kick.successes, r.rates.kick.attempts, r.expected_benefit);
  return t;
}

inline Table pat_rates_table(const decision::PatRates& r) {
  Table t{{"two_point_successes", "two_point_attempts", "two_point_rate", "kick_successes",
           "kick_attempts", "kick_rate", "expected_benefit"},
          {}};
  std::optional<double> e;
  if (r.two_point.value() && r.kick.value())
    e = decision::pat_expected_benefit(*r.two_point.value(), *r.kick.value());
  t.add(r.two_point.successes, r.two_point.attempts, r.two_point.value(), r.kick.successes,
        r.kick.attempts, r.kick.value(), e);
  return t;
}

inline Table pat_season_table(const decision::PatRuleChange& rc) {
  Table t{{"season", "kick_successes", "kick_attempts", "kick_rate", "two_point_successes",
           "two_point_attempts", "two_point_rate"},
          {}};
  for (const auto& s : rc.seasons)
    t.add(s.season, s.rates.kick.successes, s.rates.kick.attempts, s.rates.kick.value(),
          s.rates.two_point.successes, s.rates.two_point.attempts, s.rates.two_point.value());
  return t;
}

inline Table pat_test_table(const decision::PatRuleChange& rc) {
  Table t{{"attempt", "final_season", "rate_difference", "z", "p_value"}, {}};
  t.add("kick", rc.final_season, rc.kick_test.estimate, rc.kick_test.statistic,
        rc.kick_test.p_value);
  t.add("two_point", rc.final_season, rc.two_point_test.estimate, rc.two_point_test.statistic,
        rc.two_point_test.p_value);
  return t;
}

inline Table rate_curve_table(const stats::RateCurve& c) {
  Table t{{"bin_lo", "bin_hi", "trials", "successes", "rate", "ci_low", "ci_high"}, {}};
  for (std::size_t i = 0; i < c.bins(); ++i)
    t.add(c.bin_edges[i], c.bin_edges[i + 1], c.trials[i], c.successes[i], c.rate[i],
          c.ci_low[i], c.ci_high[i]);
  return t;
}

inline Table drive_outcome_table(const std::vector<decision::DriveOutcomeBin>& bins) {
  Table t{{"start_lo", "start_hi", "drives", "touchdowns", "field_goals", "failures", "pi_td",
           "pi_fg", "pi_fail"},
          {}};
  for (const auto& b : bins)
    t.add(b.lo, b.hi, b.drives, b.touchdowns, b.field_goals, b.failures, b.pi_td, b.pi_fg,
          b.pi_fail);
  return t;
}

inline Table decision_chart_table(const decision::DecisionChart& chart) {
  Table t{{"l", "e_plus", "e_minus", "e_net", "recommend"}, {}};
  for (const auto& r : chart.rows)
    t.add(r.benefit.l, r.benefit.e_plus, r.benefit.e_minus, r.benefit.e_net,
          decision::to_string(r.recommend));
  return t;
}

inline Table fourth_down_summary_table(const decision::FourthDownCurves& c,
                                       const decision::DecisionChart& chart) {
  Table t{{"quantity", "value"}, {}};
  t.add("avg_drive_length", c.avg_drive_length);
  t.add("drive_count", c.drive_count);
  t.add("overall_conversion_rate", c.overall_conversion_rate);
  t.add("adjusted_conversion_rate", c.adjusted_conversion_rate);
  t.add("fg_overall_rate", c.fg_overall_rate);
  t.add("mean_net_uniform", chart.mean_net_uniform);
  t.add("mean_net_weighted", chart.mean_net_weighted);
  t.add("positive_fraction", chart.positive_fraction);
  std::optional<double> tstat, p;
  if (chart.net_test) {
    tstat = chart.net_test->statistic;
    p = chart.net_test->p_value;
  }
  t.add("net_test_t", tstat);
  t.add("net_test_p_one_sided", p);
  return t;
}

inline Table rank_table(const ranking::RankBook& book, std::optional<int> season,
                        std::optional<int> week) {
  Table t{{"season", "week", "team", "score", "rank"}, {}};
  for (const auto& [key, tab] : book.tables()) {
    if (season && key.season != *season) continue;
    if (week && key.week != *week) continue;
    std::vector<std::size_t> order(tab.teams.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return tab.rank[a] < tab.rank[b]; });
    for (auto i : order) t.add(key.season, key.week, tab.teams[i], tab.score[i], tab.rank[i]);
  }
  return t;
}

inline Table coefficient_table(const model::FittedBTModel& raw,
                               const std::optional<model::FittedBTModel>& standardized) {
  Table t{{"term", "estimate", "std_error", "p_value", "std_estimate", "std_std_error",
           "std_p_value"},
          {}};
  for (std::size_t k = 0; k < model::kNumCoefficients; ++k) {
    std::optional<double> se, sp, sc;
    if (standardized) {
      sc = standardized->coef[k];
      se = standardized->se[k];
      sp = standardized->p_value[k];
    }
    t.add(std::string(model::kCoefficientNames[k]), raw.coef[k], raw.se[k], raw.p_value[k], sc,
          se, sp);
  }
  return t;
}

inline Table game_day_test_table(const model::GameDaySummary& s) {
  Table t{{"stat", "games", "winner_mean", "loser_mean", "mean_difference", "t", "df",
           "p_value", "ks_d", "ks_p_value"},
          {}};
  for (const auto& c : s.comparisons) {
    auto w = stats::mean_sd(c.winner), l = stats::mean_sd(c.loser);
    std::optional<double> tt, df, p, d, kp;
    if (c.paired) {
      tt = c.paired->statistic;
      df = c.paired->df;
      p = c.paired->p_value;
    }
    if (c.ks) {
      d = c.ks->statistic;
      kp = c.ks->p_value;
    }
    t.add(c.stat, c.diff.size(), w.mean, l.mean, w.mean - l.mean, tt, df, p, d, kp);
  }
  return t;
}

// Step points of the ECDF of winner-minus-loser differences, per statistic.
inline Table ecdf_table(const model::GameDaySummary& s) {
  Table t{{"stat", "x", "ecdf"}, {}};
  for (const auto& c : s.comparisons) {
    if (c.diff.empty()) continue;
    auto f = stats::ecdf(c.diff);
    auto xs = c.diff;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (double x : xs) t.add(c.stat, x, f(x));
  }
  return t;
}

inline Table home_advantage_table(const model::GameDaySummary& s) {
  Table t{{"season", "games", "home_wins", "home_win_rate"}, {}};
  for (const auto& h : s.home_by_season) t.add(std::to_string(h.season), h.games, h.home_wins, h.rate());
  t.add("mean", Cell{}, Cell{}, s.home_rate_mean);
  t.add("sd", Cell{}, Cell{}, s.home_rate_sd);
  return t;
}

inline Table correlation_table(const stats::CorrMatrix& m) {
  Table t{{"stat_a", "stat_b", "rho", "p_value"}, {}};
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = a + 1; b < m.size(); ++b)
      t.add(m.labels[a], m.labels[b], m.rho[a][b], m.p[a][b]);
  return t;
}

inline Table ratio_by_quarter_table(const decision::QuarterRatios& q) {
  Table t{{"quarter", "winner_mean_ratio", "loser_mean_ratio"}, {}};
  for (std::size_t i = 0; i < 4; ++i) t.add(static_cast<int>(i) + 1, q.winner_mean[i], q.loser_mean[i]);
  return t;
}

inline Table turnover_timing_table(const decision::TurnoverTiming& tt) {
  Table t{{"minute_lo", "minute_hi", "turnovers"}, {}};
  for (std::size_t i = 0; i < tt.counts.size(); ++i) {
    int lo = static_cast<int>(i) * tt.bin_minutes;
    t.add(lo, std::min(lo + tt.bin_minutes, 60), tt.counts[i]);
  }
  return t;
}

inline Table cv_table(const model::CvResult& cv) {
  Table t{{"fold", "accuracy"}, {}};
  for (std::size_t i = 0; i < cv.fold_accuracy.size(); ++i)
    t.add(std::to_string(i + 1), cv.fold_accuracy[i]);
  t.add("mean", cv.mean);
  t.add("sd", cv.sd);
  return t;
}

inline Table predictions_table(const std::vector<fpm::PredictionResult>& preds,
                               const SeasonDataset& ds) {
  Table t{{"season", "week", "game_id", "home", "away", "p_home_mean", "p_sd", "p_value",
           "decision", "actual"},
          {}};
  for (const auto& p : preds) {
    Cell actual;
    if (const auto* g = ds.find_game(p.game_id)) actual = cell(fpm::to_string(fpm::actual_outcome(*g)));
    t.rows.push_back({cell(p.season), cell(p.week), cell(p.game_id), cell(p.home), cell(p.away),
                      cell(p.p_home_mean), cell(p.p_sd), cell(p.p_value),
                      cell(fpm::to_string(p.decision)), actual});
  }
  return t;
}

inline Table evaluation_predictions_table(const fpm::EvaluationReport& rep) {
  Table t{{"season", "week", "game_id", "home", "away", "p_home_mean", "p_sd", "p_value",
           "decision", "actual"},
          {}};
  for (const auto& g : rep.games) {
    const auto& p = g.pred;
    t.add(p.season, p.week, p.game_id, p.home, p.away, p.p_home_mean, p.p_sd, p.p_value,
          fpm::to_string(p.decision), fpm::to_string(g.actual));
  }
  return t;
}

inline std::string blocks_text(const fpm::Blocks& blocks) {
  std::string s;
  for (const auto& b : blocks) {
    if (!s.empty()) s += '|';
    for (std::size_t i = 0; i < b.size(); ++i)
      s += (i ? "+" : "") + std::string(model::kTeamStatNames[b[i]]);
  }
  return s;
}

inline Table evaluation_season_table(const fpm::EvaluationReport& rep) {
  Table t{{"season", "games", "engine_accuracy", "baseline_accuracy", "predicted_ties",
           "tie_rate", "blocks", "rng", "seed"},
          {}};
  const auto seed = std::to_string(rep.config.boot.seed);
  for (const auto& s : rep.seasons)
    t.add(std::to_string(s.season), s.games, s.accuracy(), s.baseline_accuracy(),
          s.predicted_ties, s.tie_rate(), blocks_text(s.blocks), rep.rng_algorithm, seed);
  int ties = 0;
  for (const auto& s : rep.seasons) ties += s.predicted_ties;
  t.add("all", rep.total_games(), rep.accuracy(), rep.baseline_accuracy(), ties,
        rep.total_games() ? static_cast<double>(ties) / rep.total_games() : 0.0, "",
        rep.rng_algorithm, seed);
  return t;
}

inline Table evaluation_weekly_table(const fpm::EvaluationReport& rep) {
  Table t{{"week", "games", "accuracy"}, {}};
  for (const auto& w : rep.weekly) t.add(w.week, w.games, w.accuracy());
  return t;
}

// Populated buckets only.
inline Table calibration_table(const fpm::EvaluationReport& rep) {
  Table t{{"bucket_lo", "bucket_hi", "midpoint", "games", "favorite_wins", "win_rate"}, {}};
  for (const auto& b : rep.calibration)
    if (b.games > 0) t.add(b.lo, b.hi, b.midpoint(), b.games, b.favorite_wins, b.win_rate());
  return t;
}

inline Table evaluation_fit_table(const fpm::EvaluationReport& rep) {
  Table t{{"series", "n", "slope", "intercept", "r_squared", "slope_ci_low", "slope_ci_high"},
          {}};
  auto row = [&](const char* name, const std::optional<stats::LinearFit>& f) {
    if (f)
      t.add(name, f->n, f->slope, f->intercept, f->r_squared, f->slope_ci_low, f->slope_ci_high);
    else
      t.add(name, 0, Cell{}, Cell{}, Cell{}, Cell{}, Cell{});
  };
  row("weekly_accuracy", rep.weekly_trend);
  row("calibration", rep.calibration_fit);
  return t;
}

inline Table leakage_table(const std::vector<fpm::LeakageViolation>& v) {
  Table t{{"game_id", "violation"}, {}};
  for (const auto& x : v) t.add(x.game_id, x.detail);
  return t;
}

}  // namespace gridiron::report
