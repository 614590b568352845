#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gridiron/core/types.hpp"
#include "gridiron/model/bt_model.hpp"
#include "gridiron/ranking/sportsnetrank.hpp"
#include "gridiron/rng.hpp"

namespace gridiron::fpm {

struct SynthParams {
  model::Coefficients coef = model::kPublishedCoefficients;
  // Standard deviation of latent team strength; 0 makes all teams alike.
  double strength_spread = 1.0;
  int n_seasons = 7;
  int n_teams = 32;
  int weeks = 17;
  int first_season = 2009;
  std::uint64_t seed = kDefaultSeed;
  // Within-team game-to-game correlation of total yards and possession time.
  double yards_possession_corr = 0.5;

  void validate() const {
    for (double c : coef)
      if (!std::isfinite(c)) throw Error(ErrorCode::BadParams, "coefficients must be finite");
    if (!(strength_spread >= 0.0) || !std::isfinite(strength_spread))
      throw Error(ErrorCode::BadParams, "strength spread must be >= 0");
    if (n_seasons < 1) throw Error(ErrorCode::BadParams, "need at least one season");
    if (n_teams < 4 || n_teams % 2 != 0 || n_teams > 99)
      throw Error(ErrorCode::BadParams, "team count must be even and in [4, 98]");
    if (weeks < 2 || weeks > n_teams - 1 || weeks > 17)
      throw Error(ErrorCode::BadParams, "weeks must be in [2, min(17, teams - 1)]");
    if (!(yards_possession_corr > -1.0 && yards_possession_corr < 1.0))
      throw Error(ErrorCode::BadParams, "correlation must be in (-1, 1)");
  }
};

inline std::string synth_team_code(int i) {
  std::string s = "T";
  if (i + 1 < 10) s += '0';
  return s + std::to_string(i + 1);
}

// Per-team means of the generated statistics, driven by one latent strength.
struct TeamProfile {
  double yards = 340.0;
  double possession = 1800.0;
  double turnovers = 1.5;
  double ratio = 0.62;
  double penalty = 50.0;
};

inline TeamProfile team_profile(double strength) {
  TeamProfile p;
  p.yards += 35.0 * strength;
  p.possession += 90.0 * strength;
  p.turnovers = std::max(0.3, 1.5 - 0.35 * strength);
  p.ratio -= 0.03 * strength;
  p.penalty -= 5.0 * strength;
  return p;
}

inline TeamGameStat draw_team_game(const TeamProfile& prof, double rho, SplitMix64& g) {
  double z1 = normal01(g), z2 = normal01(g);
  double yards = prof.yards + 60.0 * z1;
  double poss = prof.possession + 240.0 * (rho * z1 + std::sqrt(1.0 - rho * rho) * z2);
  double ratio = std::clamp(prof.ratio + 0.10 * normal01(g), 0.05, 0.95);
  TeamGameStat s;
  s.total_yards = static_cast<int>(std::lround(std::max(yards, 60.0)));
  s.passing_yards = static_cast<int>(std::lround(ratio * s.total_yards));
  s.rushing_yards = s.total_yards - s.passing_yards;
  s.penalty_yards = static_cast<int>(std::lround(std::max(prof.penalty + 20.0 * normal01(g), 0.0)));
  s.turnovers = poisson(g, prof.turnovers);
  s.possession_seconds = static_cast<int>(std::lround(std::clamp(poss, 900.0, 2700.0)));
  return s;
}

// Round-robin seasons whose home-win labels follow the logistic model with
// the given coefficients applied to the generated game statistics and to the
// pre-week rank differential. The first week of each season has no ranking
// and uses a zero rank differential. Only games and stats are produced.
inline SeasonDataset synthesize_seasons(const SynthParams& p) {
  p.validate();
  const auto model = model::FittedBTModel::from_coefficients(p.coef);
  std::vector<GameRecord> games;
  std::vector<TeamGameStat> stats;
  std::vector<std::string> teams;
  for (int i = 0; i < p.n_teams; ++i) teams.push_back(synth_team_code(i));

  for (int si = 0; si < p.n_seasons; ++si) {
    const int season = p.first_season + si;
    const auto season_key = static_cast<std::uint64_t>(season);
    std::vector<TeamProfile> profile;
    for (int i = 0; i < p.n_teams; ++i) {
      auto g = substream(p.seed, {fnv1a64("strength"), season_key, static_cast<std::uint64_t>(i)});
      profile.push_back(team_profile(p.strength_spread * normal01(g)));
    }
    // Circle method: slot 0 stays fixed, the rest rotate one place per round.
    std::vector<int> ring(static_cast<std::size_t>(p.n_teams));
    for (int i = 0; i < p.n_teams; ++i) ring[static_cast<std::size_t>(i)] = i;
    std::vector<GameRecord> season_games;
    for (int week = 1; week <= p.weeks; ++week) {
      std::optional<ranking::RankTable> table;
      if (week > 1)
        table = ranking::sportsnetrank(ranking::build_win_graph(season_games, {season, week}));
      const int half = p.n_teams / 2;
      for (int k = 0; k < half; ++k) {
        int a = ring[static_cast<std::size_t>(k)];
        int b = ring[static_cast<std::size_t>(p.n_teams - 1 - k)];
        if ((week + k) % 2 == 0) std::swap(a, b);
        GameRecord gm;
        gm.season = season;
        gm.week = week;
        gm.home_team = teams[static_cast<std::size_t>(a)];
        gm.away_team = teams[static_cast<std::size_t>(b)];
        gm.game_id = std::to_string(season) + "_" + (week < 10 ? "0" : "") +
                     std::to_string(week) + "_" + gm.away_team + "_" + gm.home_team;
        auto g = substream(p.seed, {fnv1a64("game"), fnv1a64(gm.game_id)});
        auto hs = draw_team_game(profile[static_cast<std::size_t>(a)], p.yards_possession_corr, g);
        auto as = draw_team_game(profile[static_cast<std::size_t>(b)], p.yards_possession_corr, g);
        hs.game_id = as.game_id = gm.game_id;
        hs.team = gm.home_team;
        as.team = gm.away_team;
        int d_rank = table ? ranking::rank_diff(*table, gm.home_team, gm.away_team) : 0;
        auto x = model::differential(*model::team_stat_vector(hs), *model::team_stat_vector(as),
                                     d_rank);
        bool home_won = uniform01(g) < model::predict_prob(model, x);
        int loser = 3 + static_cast<int>(uniform_index(g, 21));
        int winner = loser + 1 + static_cast<int>(uniform_index(g, 17));
        gm.home_score = home_won ? winner : loser;
        gm.away_score = home_won ? loser : winner;
        season_games.push_back(gm);
        stats.push_back(hs);
        stats.push_back(as);
      }
      std::rotate(ring.begin() + 1, ring.end() - 1, ring.end());
    }
    games.insert(games.end(), season_games.begin(), season_games.end());
  }
  return SeasonDataset(std::move(games), {}, std::move(stats), {});
}

}  // namespace gridiron::fpm
