#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "builders.hpp"
#include "gridiron/ranking/sportsnetrank.hpp"

using namespace gridiron;
using namespace gridiron::ranking;
using testing_support::game;

namespace {

std::vector<GameRecord> chain() {
  // A beat B in week 1, B beat C in week 2.
  return {game("g1", 2015, 1, "A", "B", 20, 10), game("g2", 2015, 2, "B", "C", 14, 7),
          game("g3", 2015, 3, "A", "C", 0, 0)};
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST(WinGraph, Edges) {
  std::vector<GameRecord> games = {game("g1", 2015, 1, "A", "B", 20, 10),
                                   game("g2", 2015, 2, "B", "A", 3, 17),
                                   game("g3", 2015, 2, "C", "D", 7, 7),
                                   game("g4", 2015, 3, "A", "C", 7, 0)};
  auto one = build_win_graph(games, {2015, 2});
  EXPECT_EQ(one.edge(*one.index_of("B"), *one.index_of("A")), 1.0);
  EXPECT_EQ(one.latest_week_used, 1);
  auto g = build_win_graph(games, {2015, 3});
  EXPECT_EQ(g.edge(*g.index_of("B"), *g.index_of("A")), 2.0);
  EXPECT_EQ(g.size(), 4u);
  auto c = *g.index_of("C"), d = *g.index_of("D");
  EXPECT_EQ(g.edge(c, d) + g.edge(d, c), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g.edge(i, i), 0.0);
}

TEST(WinGraph, NoGamesBeforeCutoff) {
  try {
    build_win_graph(chain(), {2015, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoGames);
  }
}

TEST(SportsNetRank, ChainMatchesHandIteration) {
  auto t = sportsnetrank(build_win_graph(chain(), {2015, 3}));
  // Stationary equations, with A dangling and b = (1-d)/3 + d x_A / 3:
  //   x_C = b, x_B = b (1 + d), x_A = b (1 + d + d^2).
  const double d = 0.85;
  const double k = 1.0 + d + d * d;
  const double b = ((1.0 - d) / 3.0) / (1.0 - d * k / 3.0);
  EXPECT_NEAR(t.score_of("C"), b, 1e-8);
  EXPECT_NEAR(t.score_of("B"), b * (1.0 + d), 1e-8);
  EXPECT_NEAR(t.score_of("A"), b * k, 1e-8);
  EXPECT_NEAR(sum(t.score), 1.0, 1e-9);
  EXPECT_EQ(t.rank_of("A"), 1);
  EXPECT_EQ(t.rank_of("B"), 2);
  EXPECT_EQ(t.rank_of("C"), 3);
}

TEST(SportsNetRank, SplitRoundRobinIsUniform) {
  std::vector<GameRecord> games;
  const std::vector<std::string> teams = {"A", "B", "C", "D"};
  int k = 0;
  for (std::size_t i = 0; i < teams.size(); ++i)
    for (std::size_t j = i + 1; j < teams.size(); ++j) {
      games.push_back(game("x" + std::to_string(k++), 2015, 1, teams[i], teams[j], 7, 3));
      games.push_back(game("x" + std::to_string(k++), 2015, 2, teams[j], teams[i], 7, 3));
    }
  auto t = sportsnetrank(build_win_graph(games, {2015, 3}));
  for (double s : t.score) EXPECT_NEAR(s, 0.25, 1e-9);
  // Equal scores fall back to team-code order.
  EXPECT_EQ(t.rank_of("A"), 1);
  EXPECT_EQ(t.rank_of("D"), 4);
  EXPECT_EQ(std::abs(rank_diff(t, "A", "B")), 1);
}

TEST(SportsNetRank, RandomGraphsAreStochasticAndStationary) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    int n = 3 + rep % 10;
    std::vector<GameRecord> games;
    std::uniform_int_distribution<int> pick(0, n - 1), score(0, 40);
    for (int i = 0; i < 3 * n; ++i) {
      int a = pick(rng), b = pick(rng);
      if (a == b) continue;
      games.push_back(game("r" + std::to_string(i), 2015, 1 + i % 5, "T" + std::to_string(a),
                           "T" + std::to_string(b), score(rng), score(rng)));
    }
    if (games.empty()) continue;
    auto g = build_win_graph(games, {2015, 6});
    auto t = sportsnetrank(g);
    EXPECT_NEAR(sum(t.score), 1.0, 1e-9);
    auto next = pagerank_step(g, t.score, 0.85);
    double l1 = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) l1 += std::abs(next[i] - t.score[i]);
    EXPECT_LT(l1, 1e-9);

    // Ranks are a permutation consistent with a brute-force sort.
    std::vector<int> r = t.rank;
    std::sort(r.begin(), r.end());
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ(r[i], static_cast<int>(i) + 1);
    for (std::size_t i = 0; i < t.teams.size(); ++i) {
      int better = 1;
      for (std::size_t j = 0; j < t.teams.size(); ++j) {
        auto ki = std::llround(t.score[i] * 1e12), kj = std::llround(t.score[j] * 1e12);
        if (kj > ki || (kj == ki && t.teams[j] < t.teams[i])) ++better;
      }
      EXPECT_EQ(t.rank[i], better);
    }
    EXPECT_EQ(rank_diff(t, t.teams[0], t.teams[1]), -rank_diff(t, t.teams[1], t.teams[0]));
  }
}

TEST(SportsNetRank, IsolatedTeamKeepsOrder) {
  auto games = chain();
  auto before = sportsnetrank(build_win_graph(games, {2015, 3}));
  games.push_back(game("g9", 2015, 9, "Z", "Y", 3, 0));
  auto after = sportsnetrank(build_win_graph(games, {2015, 3}));
  EXPECT_GT(after.score_of("A"), after.score_of("B"));
  EXPECT_GT(after.score_of("B"), after.score_of("C"));
  EXPECT_EQ(before.rank_of("A"), after.rank_of("A"));
}

TEST(SportsNetRank, NonConvergence) {
  PageRankOptions opts;
  opts.max_iter = 1;
  try {
    sportsnetrank(build_win_graph(chain(), {2015, 3}), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonConvergence);
  }
}

TEST(RankDiff, SignConvention) {
  RankTable t;
  t.teams = {"A", "B"};
  t.score = {0.7, 0.3};
  t.rank = {1, 5};
  EXPECT_EQ(rank_diff(t, "A", "B"), 4);
  try {
    rank_diff(t, "A", "Q");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownTeam);
  }
}

TEST(RankBook, SnapshotsNeverSeeTheirWeek) {
  auto book = build_rank_book(chain());
  EXPECT_EQ(book.find({2015, 1}), nullptr);
  ASSERT_NE(book.find({2015, 2}), nullptr);
  for (const auto& [key, t] : book.tables()) EXPECT_LT(t.latest_week_used, key.week);
  try {
    book.at({2015, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingRankSnapshot);
  }
}
