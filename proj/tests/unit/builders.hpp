#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gridiron/core/types.hpp"
#include "gridiron/model/bt_model.hpp"

namespace testing_support {

using namespace gridiron;

inline GameRecord game(std::string id, int season, int week, std::string home, std::string away,
                       int hs, int as) {
  GameRecord g;
  g.game_id = std::move(id);
  g.season = season;
  g.week = week;
  g.home_team = std::move(home);
  g.away_team = std::move(away);
  g.home_score = hs;
  g.away_score = as;
  return g;
}

// Sequential play builder for one game; play_index and clock advance on their own.
class PlayLog {
 public:
  explicit PlayLog(std::string game_id) : game_id_(std::move(game_id)) {}

  PlayLog& quarter(int q) {
    quarter_ = q;
    clock_ = 900;
    return *this;
  }
  PlayLog& clock(int c) {
    clock_ = c;
    return *this;
  }

  PlayRecord& add(std::string offense, PlayType type, std::optional<int> yardline, int down,
                  int ytg, int gained, int points = 0, std::optional<bool> success = {},
                  Turnover to = Turnover::None, int elapsed = 30) {
    PlayRecord p;
    p.game_id = game_id_;
    p.play_index = ++index_;
    p.quarter = quarter_;
    p.clock_remaining = clock_;
    p.offense = std::move(offense);
    p.play_type = type;
    p.yardline_100 = yardline;
    p.down = down;
    p.yards_to_go = ytg;
    p.yards_gained = gained;
    p.points_scored = points;
    p.attempt_success = success;
    p.turnover = to;
    clock_ = std::max(0, clock_ - elapsed);
    plays_.push_back(p);
    return plays_.back();
  }

  const std::vector<PlayRecord>& plays() const { return plays_; }

 private:
  std::string game_id_;
  int index_ = 0;
  int quarter_ = 1;
  int clock_ = 900;
  std::vector<PlayRecord> plays_;
};

// Code of the gridiron::Error thrown by f, nullopt when nothing is thrown.
template <typename F>
std::optional<ErrorCode> error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Differential rows at realistic scales; labels drawn from logistic(b . x).
inline std::vector<model::FeatureDiff> synthetic_rows(std::size_t n, const model::Coefficients& b,
                                                      std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> u01;
  std::uniform_int_distribution<int> rank(-31, 31);
  const model::FeatureVector sd = {90.0, 35.0, 1.6, 400.0, 0.15, 0.0};
  std::vector<model::FeatureDiff> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = rows[i];
    r.game_id = "s" + std::to_string(i);
    r.season = 2000 + static_cast<int>(i % 7);
    r.week = 2 + static_cast<int>(i % 16);
    for (std::size_t j = 0; j + 1 < model::kNumFeatures; ++j) r.x[j] = sd[j] * n01(g);
    r.x[model::kRatio] = std::clamp(r.x[model::kRatio], -1.0, 1.0);
    r.x[model::kRank] = rank(g);
    r.label = u01(g) < model::logistic(model::linear_predictor(b, r.x)) ? 1 : 0;
  }
  return rows;
}

}  // namespace testing_support
