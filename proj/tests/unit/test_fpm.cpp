#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "builders.hpp"
#include "gridiron/fpm/evaluate.hpp"
#include "gridiron/fpm/synth.hpp"

using namespace gridiron;
using namespace gridiron::fpm;
using testing_support::error_code;
using testing_support::game;

namespace {

PerfMatrix matrix_of(std::vector<TeamStatVector> rows, std::string team = "AAA") {
  PerfMatrix m;
  m.team = std::move(team);
  m.rows = std::move(rows);
  return m;
}

// Row i carries i in every column, so a draw can be traced back to its row.
PerfMatrix indexed_matrix(std::size_t n) {
  std::vector<TeamStatVector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    TeamStatVector v;
    v.fill(static_cast<double>(i));
    rows.push_back(v);
  }
  return matrix_of(rows);
}

TeamGameStat stat(const std::string& id, const std::string& team, int yards) {
  return {id, team, yards, yards / 2, yards - yards / 2, 40, 1, 1800};
}

SynthParams small_league(int seasons = 3) {
  SynthParams p;
  p.n_seasons = seasons;
  p.n_teams = 12;
  p.weeks = 11;
  return p;
}

EvalConfig small_eval(int threads = 1) {
  EvalConfig c;
  c.boot.B = 50;
  c.start_week = 6;
  c.end_week = 11;
  c.threads = threads;
  return c;
}

}  // namespace

TEST(Recency, OldestRowProbability) {
  auto w = recency_weights(6, 5, 2.0);
  EXPECT_NEAR(w[0], 1.0 / 11.0, 1e-15);
  for (std::size_t i = 1; i < 6; ++i) EXPECT_NEAR(w[i], 2.0 / 11.0, 1e-15);
  auto short_w = recency_weights(3, 5, 2.0);
  for (double v : short_w) EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);
}

TEST(Bootstrap, SingleRowRepeats) {
  TeamStatVector row = {320, 45, 2, 1850, 0.61};
  BootstrapConfig cfg;
  cfg.B = 200;
  auto v = bootstrap_vectors(matrix_of({row}), cfg, singleton_blocks(), 1);
  ASSERT_EQ(v.size(), 200u);
  for (const auto& s : v) EXPECT_EQ(s, row);
}

TEST(Bootstrap, EmptyMatrix) {
  EXPECT_EQ(error_code([] { bootstrap_vectors(matrix_of({}), {}, singleton_blocks(), 1); }),
            ErrorCode::EmptyMatrix);
}

TEST(Bootstrap, UniformFrequenciesWithoutRecencyBias) {
  BootstrapConfig cfg;
  cfg.B = 100000;
  cfg.recency_multiplier = 1.0;
  const std::size_t n = 4;
  auto v = bootstrap_vectors(indexed_matrix(n), cfg, {{0, 1, 2, 3, 4}}, 7);
  std::vector<int> count(n, 0);
  for (const auto& s : v) count[static_cast<std::size_t>(s[0])] += 1;
  const double p = 1.0 / n, expect = cfg.B * p, sd = std::sqrt(cfg.B * p * (1 - p));
  for (int c : count) EXPECT_LT(std::abs(c - expect), 3 * sd);
}

TEST(Bootstrap, RecencyFrequencies) {
  BootstrapConfig cfg;
  cfg.B = 100000;
  auto v = bootstrap_vectors(indexed_matrix(6), cfg, {{0, 1, 2, 3, 4}}, 7);
  int oldest = 0;
  for (const auto& s : v) oldest += s[0] == 0.0;
  const double p = 1.0 / 11.0;
  EXPECT_LT(std::abs(oldest - cfg.B * p), 3 * std::sqrt(cfg.B * p * (1 - p)));
}

TEST(Bootstrap, BlocksCopyOneRow) {
  BootstrapConfig cfg;
  cfg.B = 500;
  Blocks blocks = {{0, 3}, {1}, {2, 4}};
  auto v = bootstrap_vectors(indexed_matrix(8), cfg, blocks, 3);
  bool mixed = false;
  for (const auto& s : v) {
    EXPECT_EQ(s[0], s[3]);
    EXPECT_EQ(s[2], s[4]);
    mixed |= s[0] != s[1];
  }
  EXPECT_TRUE(mixed);
}

TEST(Bootstrap, DeterministicPerKey) {
  BootstrapConfig cfg;
  cfg.B = 100;
  auto m = indexed_matrix(9);
  auto a = bootstrap_vectors(m, cfg, singleton_blocks(), 42);
  EXPECT_EQ(a, bootstrap_vectors(m, cfg, singleton_blocks(), 42));
  EXPECT_NE(a, bootstrap_vectors(m, cfg, singleton_blocks(), 43));
  cfg.seed += 1;
  EXPECT_NE(a, bootstrap_vectors(m, cfg, singleton_blocks(), 42));
}

TEST(BootstrapConfig, Validation) {
  BootstrapConfig c;
  c.alpha = 1.0;
  EXPECT_EQ(error_code([&] { c.validate(); }), ErrorCode::BadParams);
  c = {};
  c.B = 0;
  EXPECT_EQ(error_code([&] { c.validate(); }), ErrorCode::BadParams);
  c = {};
  c.recency_multiplier = 0.5;
  EXPECT_EQ(error_code([&] { c.validate(); }), ErrorCode::BadParams);
}

TEST(PerfMatrix, RowsAndCutoff) {
  std::vector<GameRecord> games;
  std::vector<TeamGameStat> stats;
  // AAA plays weeks 1-5 and 6; BBB has a bye in week 3.
  for (int w = 1; w <= 6; ++w) {
    std::string id = "2015_0" + std::to_string(w) + "_AAA";
    games.push_back(game(id, 2015, w, "AAA", "X" + std::to_string(w), 10, 3));
    stats.push_back(stat(id, "AAA", 300 + w));
    stats.push_back(stat(id, "X" + std::to_string(w), 200));
    if (w != 3) {
      std::string bid = "2015_0" + std::to_string(w) + "_BBB";
      games.push_back(game(bid, 2015, w, "Y" + std::to_string(w), "BBB", 10, 3));
      stats.push_back(stat(bid, "BBB", 250));
      stats.push_back(stat(bid, "Y" + std::to_string(w), 200));
    }
  }
  SeasonDataset ds(games, {}, stats);
  auto a = performance_matrix(ds, "AAA", {2015, 6});
  EXPECT_EQ(a.size(), 5u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.rows[i][0], 301.0 + i);
  for (const auto& id : a.game_ids) EXPECT_LT(ds.find_game(id)->week, 6);
  EXPECT_EQ(performance_matrix(ds, "BBB", {2015, 6}).size(), 4u);
  EXPECT_EQ(error_code([&] { performance_matrix(ds, "AAA", {2015, 1}); }), ErrorCode::NoHistory);
}

TEST(CorrelationBlocks, Thresholds) {
  std::vector<TeamStatVector> rows;
  for (int i = 0; i < 60; ++i) {
    double t = i;
    rows.push_back({t, 2 * t + 1, -t, 3 * t, 0.5 * t});
  }
  EXPECT_EQ(correlation_blocks(rows, 0.0).size(), 1u);

  std::mt19937_64 g(12);
  std::normal_distribution<double> n01;
  std::vector<TeamStatVector> noise;
  for (int i = 0; i < 200; ++i) noise.push_back({n01(g), n01(g), n01(g), n01(g), n01(g)});
  EXPECT_EQ(correlation_blocks(noise, 1.0).size(), 5u);
  EXPECT_EQ(error_code([&] { correlation_blocks(std::span(noise).first(10), 0.3); }),
            ErrorCode::TooFewRows);
}

TEST(CorrelationBlocks, YardsAndPossessionTogether) {
  auto p = small_league(4);
  p.strength_spread = 0.0;
  auto ds = synthesize_seasons(p);
  std::vector<int> seasons = {2009, 2010, 2011, 2012};
  auto blocks = correlation_blocks(league_rows(ds, seasons), 0.3);
  bool together = false;
  for (const auto& b : blocks)
    together |= std::find(b.begin(), b.end(), 0u) != b.end() &&
                std::find(b.begin(), b.end(), 3u) != b.end();
  EXPECT_TRUE(together);
}

TEST(FpmTest, OneSampleEqualsTwoSet) {
  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> u(0.3, 0.9);
  std::vector<double> p1(300);
  for (auto& v : p1) v = u(g);
  auto a = fpm_test(p1), b = two_set_test(p1);
  EXPECT_NEAR(a.p_value, b.p_value, 1e-12);
  EXPECT_NEAR(a.statistic, b.statistic, 1e-9);
}

TEST(FpmTest, DecisionRule) {
  EXPECT_EQ(decide(0.7, 0.01, 0.05), Decision::HomeWin);
  EXPECT_EQ(decide(0.3, 0.01, 0.05), Decision::AwayWin);
  EXPECT_EQ(decide(0.7, 0.05, 0.05), Decision::Tie);
}

TEST(Predict, MirrorImageTeamsTie) {
  // Constant rows make the two resample sets identical whatever rows are drawn.
  TeamStatVector row = {330, 50, 1, 1800, 0.6};
  std::vector<TeamStatVector> rows(5, row);
  auto coef = model::kPublishedCoefficients;
  coef[0] = 0.0;
  auto m = model::FittedBTModel::from_coefficients(coef);
  BootstrapConfig cfg;
  cfg.B = 100;
  auto p1 = win_probability_set(m, matrix_of(rows, "AAA"), matrix_of(rows, "BBB"), 0, cfg,
                                singleton_blocks(), 5);
  auto mean = stats::mean_sd(p1).mean;
  EXPECT_EQ(mean, 0.5);
  auto t = fpm_test(p1);
  EXPECT_EQ(decide(mean, t.p_value, cfg.alpha), Decision::Tie);
}

TEST(Predict, SyntheticGame) {
  auto ds = synthesize_seasons(small_league(1));
  auto book = ranking::build_rank_book(ds.games());
  auto m = model::FittedBTModel::from_coefficients(model::kPublishedCoefficients);
  BootstrapConfig cfg;
  cfg.B = 200;
  const GameRecord* g = nullptr;
  for (const auto& x : ds.games())
    if (x.week == 8) {
      g = &x;
      break;
    }
  ASSERT_TRUE(g);
  auto a = predict_game(ds, m, book, *g, cfg, singleton_blocks());
  auto b = predict_game(ds, m, book, *g, cfg, singleton_blocks());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.home_history.size(), 7u);
  EXPECT_LE(a.p_q025, a.p_home_mean);
  EXPECT_GE(a.p_q975, a.p_home_mean);
  if (a.p_value >= cfg.alpha)
    EXPECT_EQ(a.decision, Decision::Tie);
  else
    EXPECT_EQ(a.decision, a.p_home_mean > 0.5 ? Decision::HomeWin : Decision::AwayWin);

  cfg.B = 1;
  EXPECT_EQ(error_code([&] { predict_game(ds, m, book, *g, cfg, singleton_blocks()); }),
            ErrorCode::DegenerateSampleSize);

  // Doubling B moves the mean by less than 3 sd / sqrt(B).
  cfg.B = 400;
  auto c = predict_game(ds, m, book, *g, cfg, singleton_blocks());
  EXPECT_LT(std::abs(c.p_home_mean - a.p_home_mean), 3.0 * a.p_sd / std::sqrt(200.0));
}

TEST(Baseline, Examples) {
  std::vector<GameRecord> games;
  // H goes 4-1, A goes 3-2 before week 6.
  for (int w = 1; w <= 5; ++w) {
    games.push_back(game("h" + std::to_string(w), 2015, w, "H", "O" + std::to_string(w),
                         w == 1 ? 0 : 10, 3));
    games.push_back(game("a" + std::to_string(w), 2015, w, "A", "P" + std::to_string(w),
                         w <= 2 ? 0 : 10, 3));
  }
  auto target = game("t", 2015, 6, "H", "A", 0, 0);
  auto s = standings(games, {2015, 6});
  EXPECT_EQ(s.of("H").wins, 4);
  EXPECT_EQ(baseline_predict(s, target), Decision::HomeWin);
  EXPECT_EQ(baseline_predict(standings(games, {2015, 1}), target), Decision::HomeWin);
  for (int w = 1; w <= 5; ++w) {
    games.push_back(game("w" + std::to_string(w), 2015, w, "W", "Q" + std::to_string(w), 7, 3));
    games.push_back(game("l" + std::to_string(w), 2015, w, "L", "R" + std::to_string(w), 3, 7));
  }
  EXPECT_EQ(baseline_predict(standings(games, {2015, 6}), game("u", 2015, 6, "L", "W", 0, 0)),
            Decision::AwayWin);
  EXPECT_EQ(s.latest_week_used, 5);
}

TEST(Synth, HomeWinRates) {
  auto run = [](const model::Coefficients& c) {
    SynthParams p;
    p.coef = c;
    auto ds = synthesize_seasons(p);
    int home = 0;
    for (const auto& g : ds.games()) home += g.home_won();
    return std::make_pair(static_cast<double>(home) / ds.games().size(), ds.games().size());
  };
  model::Coefficients zero{};
  auto [r0, n0] = run(zero);
  EXPECT_LT(std::abs(r0 - 0.5), 4 * std::sqrt(0.25 / n0));
  model::Coefficients intercept{};
  intercept[0] = 0.22;
  const double target = model::logistic(0.22);
  auto [r1, n1] = run(intercept);
  EXPECT_LT(std::abs(r1 - target), 4 * std::sqrt(target * (1 - target) / n1));
}

TEST(Synth, InjectedCorrelation) {
  SynthParams p;
  p.n_seasons = 10;
  p.strength_spread = 0.0;
  auto ds = synthesize_seasons(p);
  ASSERT_GE(ds.stats().size(), 5000u);
  std::vector<double> yards, poss;
  for (const auto& s : ds.stats()) {
    yards.push_back(s.total_yards);
    poss.push_back(s.possession_seconds);
  }
  EXPECT_NEAR(stats::pearson(yards, poss), p.yards_possession_corr, 0.05);
}

TEST(Synth, ScheduleShape) {
  auto p = small_league(2);
  auto ds = synthesize_seasons(p);
  EXPECT_EQ(ds.games().size(), 2u * 11u * 6u);
  std::set<std::pair<int, std::string>> seen;
  for (const auto& g : ds.games()) {
    EXPECT_FALSE(g.is_tie());
    EXPECT_TRUE(seen.insert({g.season * 100 + g.week, g.home_team}).second);
    EXPECT_TRUE(seen.insert({g.season * 100 + g.week, g.away_team}).second);
    EXPECT_NE(ds.find_stat(g.game_id, g.home_team), nullptr);
  }
  p.n_teams = 7;
  EXPECT_EQ(error_code([&] { synthesize_seasons(p); }), ErrorCode::BadParams);
}

TEST(Evaluate, ThreadsDoNotChangeResults) {
  auto ds = synthesize_seasons(small_league());
  auto a = evaluate(ds, small_eval(1));
  auto b = evaluate(ds, small_eval(4));
  ASSERT_EQ(a.games.size(), b.games.size());
  for (std::size_t i = 0; i < a.games.size(); ++i) EXPECT_EQ(a.games[i].pred, b.games[i].pred);
  EXPECT_EQ(a.total_games(), 3 * 6 * 6);
  int bucketed = 0;
  for (const auto& bin : a.calibration) bucketed += bin.games;
  EXPECT_EQ(bucketed, a.total_games());
}

TEST(Evaluate, NoLeakage) {
  auto ds = synthesize_seasons(small_league());
  auto rep = evaluate(ds, small_eval());
  EXPECT_TRUE(audit_leakage(ds, rep).empty());

  // A forged history entry from the predicted week is caught.
  rep.games[0].pred.home_history.push_back(rep.games[0].pred.game_id);
  EXPECT_EQ(audit_leakage(ds, rep).size(), 1u);
}

TEST(Evaluate, SingleSeason) {
  auto ds = synthesize_seasons(small_league(1));
  EXPECT_EQ(error_code([&] { evaluate(ds, small_eval()); }), ErrorCode::SingleSeason);
}

TEST(Calibration, Buckets) {
  std::vector<EvaluatedGame> games(4);
  games[0].pred.p_home_mean = 0.52;
  games[0].actual = Decision::HomeWin;
  games[1].pred.p_home_mean = 0.18;  // away favored at 0.82
  games[1].actual = Decision::HomeWin;
  games[2].pred.p_home_mean = 0.97;
  games[2].actual = Decision::HomeWin;
  games[3].pred.p_home_mean = 0.9;
  games[3].actual = Decision::Tie;
  auto bins = calibration_bins(games);
  ASSERT_EQ(bins.size(), 9u);
  EXPECT_EQ(bins[0].games, 1);
  EXPECT_EQ(bins[0].favorite_wins, 1);
  EXPECT_EQ(bins[6].games, 1);
  EXPECT_EQ(bins[6].favorite_wins, 0);
  EXPECT_EQ(bins[8].games, 2);
  EXPECT_EQ(bins[8].favorite_wins, 1);
}
