#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridiron/core/types.hpp"

namespace gridiron {

namespace detail {

// Outcome when `p` ends the drive it belongs to, nullopt if play continues it.
inline std::optional<DriveOutcome> terminal_outcome(const PlayRecord& p) {
  if (p.play_type == PlayType::Punt) return DriveOutcome::Punt;
  if (p.play_type == PlayType::FieldGoal)
    return p.attempt_success.value_or(false) ? DriveOutcome::FieldGoal
                                             : DriveOutcome::MissedFG;
  switch (p.turnover) {
    case Turnover::Interception: return DriveOutcome::Interception;
    case Turnover::FumbleLost: return DriveOutcome::Fumble;
    case Turnover::Downs: return DriveOutcome::Downs;
    case Turnover::None: break;
  }
  if (p.is_fourth_down_attempt() && p.attempt_success == false)
    return DriveOutcome::Downs;
  if (p.points_scored == 6) return DriveOutcome::Touchdown;
  if (p.points_scored == 2) return DriveOutcome::Safety;
  return std::nullopt;
}

inline bool counts_toward_drive_yards(PlayType t) {
  return t == PlayType::Rush || t == PlayType::Pass || t == PlayType::Kneel ||
         t == PlayType::Penalty;
}

// Quarter transitions that end every open drive.
inline std::optional<DriveOutcome> period_break(int from_quarter, int to_quarter) {
  if (from_quarter <= 2 && to_quarter >= 3) return DriveOutcome::EndHalf;
  if (from_quarter <= 4 && to_quarter >= 5) return DriveOutcome::EndGame;
  return std::nullopt;
}

}  // namespace detail

// Groups each game's scrimmage plays into drives. Plays must be ordered per
// game (parse_plays guarantees it). Throws OrphanPlay when a play's offense is
// not one of its game's teams, or when possession changes without a play that
// explains it.
inline std::vector<DriveRecord> derive_drives(std::span<const PlayRecord> plays,
                                              std::span<const GameRecord> games) {
  std::map<std::string, const GameRecord*> by_id;
  for (const auto& g : games) by_id.emplace(g.game_id, &g);

  std::vector<DriveRecord> drives;
  std::optional<DriveRecord> open;
  int open_quarter = 0;
  const PlayRecord* prev = nullptr;

  auto close = [&](DriveOutcome outcome) {
    open->outcome = outcome;
    drives.push_back(std::move(*open));
    open.reset();
  };

  for (std::size_t i = 0; i < plays.size(); ++i) {
    const auto& p = plays[i];
    bool new_game = prev == nullptr || prev->game_id != p.game_id;
    if (new_game && open)
      close(open_quarter <= 2 ? DriveOutcome::EndHalf : DriveOutcome::EndGame);

    auto git = by_id.find(p.game_id);
    if (git == by_id.end())
      throw Error(ErrorCode::OrphanPlay,
                  "play " + std::to_string(p.play_index) + " references unknown game " +
                      p.game_id);
    if (!git->second->involves(p.offense))
      throw Error(ErrorCode::OrphanPlay,
                  "play " + std::to_string(p.play_index) + " of game " + p.game_id +
                      ": offense " + p.offense + " is not playing");

    prev = &p;
    if (!is_scrimmage(p.play_type)) continue;

    if (open) {
      if (auto brk = detail::period_break(open_quarter, p.quarter)) {
        close(*brk);
      } else if (open->offense != p.offense) {
        throw Error(ErrorCode::OrphanPlay,
                    "play " + std::to_string(p.play_index) + " of game " +
                        p.game_id + ": possession changed without a terminal play");
      }
    }
    if (!open) {
      open = DriveRecord{};
      open->game_id = p.game_id;
      open->offense = p.offense;
      open->start_yards_to_goal = *p.yardline_100;
      open->first_play_index = p.play_index;
    }
    open_quarter = p.quarter;
    open->num_plays += 1;
    open->last_play_index = p.play_index;
    if (detail::counts_toward_drive_yards(p.play_type))
      open->yards_gained += p.yards_gained;

    if (auto outcome = detail::terminal_outcome(p)) close(*outcome);
  }
  if (open) close(open_quarter <= 2 ? DriveOutcome::EndHalf : DriveOutcome::EndGame);
  return drives;
}

}  // namespace gridiron
