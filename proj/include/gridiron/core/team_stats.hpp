#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "gridiron/core/types.hpp"

namespace gridiron {

// Team charged with a turnover on `p`. A lost fumble on a punt or kickoff is
// the return team's.
inline const TeamCode& turnover_committer(const PlayRecord& p, const GameRecord& g) {
  bool return_fumble = p.turnover == Turnover::FumbleLost &&
                       (p.play_type == PlayType::Punt || p.play_type == PlayType::Kickoff);
  return return_fumble ? g.opponent_of(p.offense) : p.offense;
}

// Seconds of game clock consumed by plays[i]: the drop to the next play of the
// same quarter, or the rest of the quarter for its last play.
inline int elapsed_seconds(std::span<const PlayRecord> game_plays, std::size_t i) {
  const auto& p = game_plays[i];
  if (i + 1 < game_plays.size() && game_plays[i + 1].quarter == p.quarter)
    return std::max(0, p.clock_remaining - game_plays[i + 1].clock_remaining);
  return p.clock_remaining;
}

// Per-team box score of one game. Possession time goes to the play's offense,
// which for kickoffs and punts is the kicking team.
inline std::pair<TeamGameStat, TeamGameStat> game_box_score(
    const GameRecord& g, std::span<const PlayRecord> game_plays) {
  TeamGameStat home{g.game_id, g.home_team};
  TeamGameStat away{g.game_id, g.away_team};
  auto side = [&](const TeamCode& t) -> TeamGameStat& {
    return t == g.home_team ? home : away;
  };
  for (std::size_t i = 0; i < game_plays.size(); ++i) {
    const auto& p = game_plays[i];
    if (!g.involves(p.offense))
      throw Error(ErrorCode::OrphanPlay, "offense " + p.offense +
                                             " not playing in game " + g.game_id);
    auto& off = side(p.offense);
    auto& def = side(g.opponent_of(p.offense));
    switch (p.play_type) {
      case PlayType::Pass:
        off.passing_yards += p.yards_gained;
        break;
      case PlayType::Rush:
      case PlayType::Kneel:
        off.rushing_yards += p.yards_gained;
        break;
      case PlayType::Penalty:
        if (p.yards_gained < 0)
          off.penalty_yards += -p.yards_gained;
        else
          def.penalty_yards += p.yards_gained;
        break;
      default:
        break;
    }
    if (p.is_turnover()) side(turnover_committer(p, g)).turnovers += 1;
    off.possession_seconds += elapsed_seconds(game_plays, i);
  }
  for (auto* s : {&home, &away}) s->total_yards = s->passing_yards + s->rushing_yards;
  return {home, away};
}

// Two rows (home, away) per game, in game order. Every game needs plays.
inline std::vector<TeamGameStat> aggregate_team_stats(std::span<const PlayRecord> plays,
                                                      std::span<const GameRecord> games) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> ranges;
  std::size_t i = 0;
  while (i < plays.size()) {
    std::size_t j = i;
    while (j < plays.size() && plays[j].game_id == plays[i].game_id) ++j;
    ranges.emplace(plays[i].game_id, std::make_pair(i, j));
    i = j;
  }
  std::vector<TeamGameStat> out;
  out.reserve(games.size() * 2);
  for (const auto& g : games) {
    auto it = ranges.find(g.game_id);
    if (it == ranges.end())
      throw Error(ErrorCode::MissingPlays, "no plays for game " + g.game_id);
    auto [b, e] = it->second;
    auto [home, away] = game_box_score(g, plays.subspan(b, e - b));
    out.push_back(std::move(home));
    out.push_back(std::move(away));
  }
  return out;
}

}  // namespace gridiron
