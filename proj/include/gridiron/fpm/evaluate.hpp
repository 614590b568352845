#pragma once

#include <algorithm>
#include <array>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gridiron/fpm/predict.hpp"
#include "gridiron/model/features.hpp"
#include "gridiron/stats/linear_fit.hpp"

namespace gridiron::fpm {

struct EvalConfig {
  BootstrapConfig boot;
  int start_week = 6;
  int end_week = 17;
  int threads = 1;
  model::FitOptions fit;
};

struct EvaluatedGame {
  PredictionResult pred;
  Decision baseline = Decision::HomeWin;
  Decision actual = Decision::Tie;
  int standings_latest_week = 0;

  // A predicted tie is only right when the game tied.
  bool engine_correct() const { return pred.decision == actual; }
  bool baseline_correct() const { return baseline == actual; }
};

struct SeasonSummary {
  int season = 0;
  int games = 0;
  int engine_correct = 0;
  int baseline_correct = 0;
  int predicted_ties = 0;
  std::vector<int> training_seasons;
  Blocks blocks;

  double accuracy() const { return games ? static_cast<double>(engine_correct) / games : 0.0; }
  double baseline_accuracy() const {
    return games ? static_cast<double>(baseline_correct) / games : 0.0;
  }
  double tie_rate() const { return games ? static_cast<double>(predicted_ties) / games : 0.0; }
};

struct WeekPoint {
  int week = 0;
  int games = 0;
  int correct = 0;
  double accuracy() const { return games ? static_cast<double>(correct) / games : 0.0; }
};

struct CalibrationBin {
  double lo = 0.0;
  double hi = 0.0;
  int games = 0;
  int favorite_wins = 0;
  double midpoint() const { return 0.5 * (lo + hi); }
  double win_rate() const { return games ? static_cast<double>(favorite_wins) / games : 0.0; }
};

// 5% buckets from 0.50 to 0.90, then one merged bucket up to 1.00.
inline constexpr std::array<double, 10> kCalibrationEdges = {0.50, 0.55, 0.60, 0.65, 0.70,
                                                             0.75, 0.80, 0.85, 0.90, 1.00};

struct EvaluationReport {
  std::string rng_algorithm{kRngAlgorithm};
  EvalConfig config;
  std::vector<EvaluatedGame> games;  // season, then schedule order
  std::vector<SeasonSummary> seasons;
  std::vector<WeekPoint> weekly;
  std::optional<stats::LinearFit> weekly_trend;
  std::vector<CalibrationBin> calibration;  // all 9 buckets, possibly empty
  std::optional<stats::LinearFit> calibration_fit;

  int total_games() const { return static_cast<int>(games.size()); }
  double accuracy() const {
    int c = 0;
    for (const auto& g : games) c += g.engine_correct();
    return games.empty() ? 0.0 : static_cast<double>(c) / games.size();
  }
  double baseline_accuracy() const {
    int c = 0;
    for (const auto& g : games) c += g.baseline_correct();
    return games.empty() ? 0.0 : static_cast<double>(c) / games.size();
  }
};

// Probability assigned to the predicted favorite and whether it won.
inline std::pair<double, bool> favorite_outcome(const EvaluatedGame& g) {
  bool home_fav = g.pred.p_home_mean >= 0.5;
  double p = home_fav ? g.pred.p_home_mean : 1.0 - g.pred.p_home_mean;
  bool won = home_fav ? g.actual == Decision::HomeWin : g.actual == Decision::AwayWin;
  return {p, won};
}

inline std::vector<CalibrationBin> calibration_bins(const std::vector<EvaluatedGame>& games) {
  std::vector<CalibrationBin> bins;
  for (std::size_t i = 0; i + 1 < kCalibrationEdges.size(); ++i)
    bins.push_back({kCalibrationEdges[i], kCalibrationEdges[i + 1]});
  for (const auto& g : games) {
    auto [p, won] = favorite_outcome(g);
    std::size_t b = 0;
    while (b + 1 < bins.size() && p >= bins[b].hi) ++b;
    bins[b].games += 1;
    bins[b].favorite_wins += won;
  }
  return bins;
}

namespace detail {

inline std::optional<stats::LinearFit> try_linear_fit(const std::vector<double>& x,
                                                      const std::vector<double>& y) {
  try {
    return stats::linear_fit(x, y);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Runs body(i) for i in [0, n) on up to `threads` workers; results must be
// written to per-index slots so scheduling cannot change them.
template <typename F>
void parallel_for(std::size_t n, int threads, F&& body) {
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  auto nt = static_cast<std::size_t>(std::max(threads, 1));
  nt = std::min(nt, std::max<std::size_t>(n, 1));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) run(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < n; i += nt) run(i);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

// Leave-one-season-out backtest of the engine against the standings baseline.
inline EvaluationReport evaluate(const SeasonDataset& ds, const EvalConfig& cfg) {
  cfg.boot.validate();
  if (cfg.start_week < 2 || cfg.end_week < cfg.start_week)
    throw Error(ErrorCode::BadParams, "start week must be >= 2 and <= end week");
  std::vector<int> seasons;
  for (const auto& g : ds.games())
    if (!g.is_postseason) seasons.push_back(g.season);
  std::sort(seasons.begin(), seasons.end());
  seasons.erase(std::unique(seasons.begin(), seasons.end()), seasons.end());
  if (seasons.size() < 2)
    throw Error(ErrorCode::SingleSeason, "evaluation needs at least two seasons");

  auto book = ranking::build_rank_book(ds.games());
  auto features = model::build_features(ds, book).rows;

  EvaluationReport rep;
  rep.config = cfg;
  for (int target : seasons) {
    SeasonSummary sum;
    sum.season = target;
    for (int s : seasons)
      if (s != target) sum.training_seasons.push_back(s);
    std::vector<model::FeatureDiff> train;
    for (const auto& r : features)
      if (r.season != target) train.push_back(r);
    auto m = model::fit(train, cfg.fit);
    sum.blocks = correlation_blocks(league_rows(ds, sum.training_seasons), cfg.boot.corr_threshold);

    std::vector<const GameRecord*> todo;
    std::map<int, Standings> table;
    for (const auto& g : ds.games())
      if (g.season == target && !g.is_postseason && g.week >= cfg.start_week &&
          g.week <= cfg.end_week) {
        todo.push_back(&g);
        if (!table.count(g.week)) table.emplace(g.week, standings(ds.games(), {target, g.week}));
      }
    std::vector<EvaluatedGame> out(todo.size());
    detail::parallel_for(todo.size(), cfg.threads, [&](std::size_t i) {
      const auto& g = *todo[i];
      const auto& st = table.at(g.week);
      auto& e = out[i];
      e.pred = predict_game(ds, m, book, g, cfg.boot, sum.blocks);
      e.baseline = baseline_predict(st, g);
      e.actual = actual_outcome(g);
      e.standings_latest_week = st.latest_week_used;
    });
    for (auto& e : out) {
      sum.games += 1;
      sum.engine_correct += e.engine_correct();
      sum.baseline_correct += e.baseline_correct();
      sum.predicted_ties += e.pred.decision == Decision::Tie;
      rep.games.push_back(std::move(e));
    }
    rep.seasons.push_back(std::move(sum));
  }

  std::map<int, WeekPoint> weeks;
  for (const auto& g : rep.games) {
    auto& w = weeks[g.pred.week];
    w.week = g.pred.week;
    w.games += 1;
    w.correct += g.engine_correct();
  }
  std::vector<double> wx, wy;
  for (const auto& [week, w] : weeks) {
    rep.weekly.push_back(w);
    wx.push_back(week);
    wy.push_back(w.accuracy());
  }
  rep.weekly_trend = detail::try_linear_fit(wx, wy);

  rep.calibration = calibration_bins(rep.games);
  std::vector<double> cx, cy;
  for (const auto& b : rep.calibration)
    if (b.games > 0) {
      cx.push_back(b.midpoint());
      cy.push_back(b.win_rate());
    }
  rep.calibration_fit = detail::try_linear_fit(cx, cy);
  return rep;
}

struct LeakageViolation {
  std::string game_id;
  std::string detail;
};

// Replays the provenance of every prediction against the dataset: each input
// must come from a strictly earlier week of the same season, and the model
// must not have been trained on the target season.
inline std::vector<LeakageViolation> audit_leakage(const SeasonDataset& ds,
                                                   const EvaluationReport& rep) {
  std::vector<LeakageViolation> v;
  std::map<int, const SeasonSummary*> by_season;
  for (const auto& s : rep.seasons) {
    by_season[s.season] = &s;
    if (std::find(s.training_seasons.begin(), s.training_seasons.end(), s.season) !=
        s.training_seasons.end())
      v.push_back({"season " + std::to_string(s.season), "model trained on target season"});
  }
  for (const auto& e : rep.games) {
    const auto& p = e.pred;
    const auto* game = ds.find_game(p.game_id);
    if (!game || game->season != p.season || game->week != p.week) {
      v.push_back({p.game_id, "prediction does not match a scheduled game"});
      continue;
    }
    if (!by_season.count(p.season)) v.push_back({p.game_id, "no season summary"});
    auto check_history = [&](const std::vector<std::string>& ids, const TeamCode& team) {
      for (const auto& id : ids) {
        const auto* h = ds.find_game(id);
        if (!h)
          v.push_back({p.game_id, "history game " + id + " not in dataset"});
        else if (h->season != p.season || h->week >= p.week || h->is_postseason)
          v.push_back({p.game_id, "history game " + id + " is not strictly earlier"});
        else if (!h->involves(team))
          v.push_back({p.game_id, "history game " + id + " does not involve " + team});
      }
    };
    check_history(p.home_history, p.home);
    check_history(p.away_history, p.away);
    if (p.rank_latest_week >= p.week)
      v.push_back({p.game_id, "rank snapshot uses week " + std::to_string(p.rank_latest_week)});
    if (e.standings_latest_week >= p.week)
      v.push_back({p.game_id,
                   "standings use week " + std::to_string(e.standings_latest_week)});
  }
  return v;
}

}  // namespace gridiron::fpm
