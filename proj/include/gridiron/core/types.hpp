#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gridiron/error.hpp"

namespace gridiron {

using TeamCode = std::string;

struct GameRecord {
  std::string game_id;
  int season = 0;
  int week = 0;
  TeamCode home_team;
  TeamCode away_team;
  int home_score = 0;
  int away_score = 0;
  bool is_postseason = false;

  bool is_tie() const { return home_score == away_score; }
  bool home_won() const { return home_score > away_score; }
  const TeamCode& winner() const { return home_won() ? home_team : away_team; }
  const TeamCode& loser() const { return home_won() ? away_team : home_team; }
  bool involves(std::string_view team) const {
    return home_team == team || away_team == team;
  }
  const TeamCode& opponent_of(std::string_view team) const {
    return home_team == team ? away_team : home_team;
  }

  friend bool operator==(const GameRecord&, const GameRecord&) = default;
};

enum class PlayType {
  Rush,
  Pass,
  Punt,
  FieldGoal,
  ExtraPoint,
  TwoPointAttempt,
  Kickoff,
  Kneel,
  Penalty,
  Other,
};

enum class Turnover { None, Interception, FumbleLost, Downs };

inline constexpr std::pair<PlayType, std::string_view> kPlayTypeNames[] = {
    {PlayType::Rush, "rush"},
    {PlayType::Pass, "pass"},
    {PlayType::Punt, "punt"},
    {PlayType::FieldGoal, "field_goal"},
    {PlayType::ExtraPoint, "extra_point"},
    {PlayType::TwoPointAttempt, "two_point_attempt"},
    {PlayType::Kickoff, "kickoff"},
    {PlayType::Kneel, "kneel"},
    {PlayType::Penalty, "penalty"},
    {PlayType::Other, "other"},
};

inline constexpr std::pair<Turnover, std::string_view> kTurnoverNames[] = {
    {Turnover::None, "none"},
    {Turnover::Interception, "interception"},
    {Turnover::FumbleLost, "fumble_lost"},
    {Turnover::Downs, "downs"},
};

constexpr std::string_view to_string(PlayType t) {
  for (const auto& [value, name] : kPlayTypeNames)
    if (value == t) return name;
  return "other";
}

constexpr std::string_view to_string(Turnover t) {
  for (const auto& [value, name] : kTurnoverNames)
    if (value == t) return name;
  return "none";
}

inline std::optional<PlayType> parse_play_type(std::string_view s) {
  for (const auto& [value, name] : kPlayTypeNames)
    if (name == s) return value;
  return std::nullopt;
}

inline std::optional<Turnover> parse_turnover(std::string_view s) {
  for (const auto& [value, name] : kTurnoverNames)
    if (name == s) return value;
  return std::nullopt;
}

// Plays that belong to an offensive drive. Kickoffs and tries after a
// touchdown do not.
constexpr bool is_scrimmage(PlayType t) {
  switch (t) {
    case PlayType::Rush:
    case PlayType::Pass:
    case PlayType::Punt:
    case PlayType::FieldGoal:
    case PlayType::Kneel:
    case PlayType::Penalty:
      return true;
    default:
      return false;
  }
}

constexpr bool is_kick_attempt(PlayType t) {
  return t == PlayType::FieldGoal || t == PlayType::ExtraPoint ||
         t == PlayType::TwoPointAttempt;
}

struct PlayRecord {
  std::string game_id;
  int play_index = 0;
  int quarter = 1;          // 5 = overtime
  int clock_remaining = 0;  // seconds left in quarter
  TeamCode offense;
  PlayType play_type = PlayType::Other;
  std::optional<int> yardline_100;  // yards to the opponent goal line
  int down = 0;                     // 0 = no-down play
  int yards_to_go = 0;
  int yards_gained = 0;
  int points_scored = 0;
  std::optional<bool> attempt_success;
  Turnover turnover = Turnover::None;

  bool is_fourth_down_attempt() const {
    return down == 4 &&
           (play_type == PlayType::Rush || play_type == PlayType::Pass);
  }

  // Failed fourth-down conversions count as turnovers on downs even when the
  // turnover column was left at `none`.
  bool is_turnover() const {
    if (turnover != Turnover::None) return true;
    return is_fourth_down_attempt() && attempt_success == false;
  }

  friend bool operator==(const PlayRecord&, const PlayRecord&) = default;
};

enum class DriveOutcome {
  Touchdown,
  FieldGoal,
  MissedFG,
  Punt,
  Downs,
  Interception,
  Fumble,
  Safety,
  EndHalf,
  EndGame,
};

constexpr std::string_view to_string(DriveOutcome o) {
  switch (o) {
    case DriveOutcome::Touchdown: return "touchdown";
    case DriveOutcome::FieldGoal: return "field_goal";
    case DriveOutcome::MissedFG: return "missed_fg";
    case DriveOutcome::Punt: return "punt";
    case DriveOutcome::Downs: return "downs";
    case DriveOutcome::Interception: return "interception";
    case DriveOutcome::Fumble: return "fumble";
    case DriveOutcome::Safety: return "safety";
    case DriveOutcome::EndHalf: return "end_half";
    case DriveOutcome::EndGame: return "end_game";
  }
  return "end_game";
}

struct DriveRecord {
  std::string game_id;
  TeamCode offense;
  int start_yards_to_goal = 0;
  int num_plays = 0;
  DriveOutcome outcome = DriveOutcome::EndGame;
  int yards_gained = 0;  // net rush + pass + penalty yards over the drive
  int first_play_index = 0;
  int last_play_index = 0;

  friend bool operator==(const DriveRecord&, const DriveRecord&) = default;
};

struct TeamGameStat {
  std::string game_id;
  TeamCode team;
  int total_yards = 0;
  int passing_yards = 0;
  int rushing_yards = 0;
  int penalty_yards = 0;
  int turnovers = 0;
  int possession_seconds = 0;

  // Fraction of offensive yards gained by passing; undefined unless
  // total_yards > 0.
  std::optional<double> pass_ratio() const {
    if (total_yards <= 0) return std::nullopt;
    return static_cast<double>(passing_yards) / total_yards;
  }

  friend bool operator==(const TeamGameStat&, const TeamGameStat&) = default;
};

// Snapshot key: everything strictly before `week` of `season` is visible.
struct SeasonWeek {
  int season = 0;
  int week = 0;
  friend auto operator<=>(const SeasonWeek&, const SeasonWeek&) = default;
};

// Immutable once validated. Games keep file order; the index maps speed up
// lookups by game_id and (game_id, team).
class SeasonDataset {
 public:
  SeasonDataset() = default;
  SeasonDataset(std::vector<GameRecord> games, std::vector<PlayRecord> plays,
                std::vector<TeamGameStat> stats,
                std::vector<DriveRecord> drives = {})
      : games_(std::move(games)),
        plays_(std::move(plays)),
        stats_(std::move(stats)),
        drives_(std::move(drives)) {
    reindex();
  }

  const std::vector<GameRecord>& games() const { return games_; }
  const std::vector<PlayRecord>& plays() const { return plays_; }
  const std::vector<TeamGameStat>& stats() const { return stats_; }
  const std::vector<DriveRecord>& drives() const { return drives_; }

  bool has_plays() const { return !plays_.empty(); }
  bool has_stats() const { return !stats_.empty(); }

  const GameRecord* find_game(std::string_view id) const {
    auto it = game_index_.find(std::string(id));
    return it == game_index_.end() ? nullptr : &games_[it->second];
  }

  const TeamGameStat* find_stat(std::string_view game_id,
                                std::string_view team) const {
    auto it = stat_index_.find({std::string(game_id), std::string(team)});
    return it == stat_index_.end() ? nullptr : &stats_[it->second];
  }

  // Plays of one game in file order; empty span when the game has no plays.
  std::pair<std::size_t, std::size_t> play_range(std::string_view id) const {
    auto it = play_ranges_.find(std::string(id));
    if (it == play_ranges_.end()) return {0, 0};
    return it->second;
  }

  std::vector<int> seasons() const {
    std::vector<int> out;
    for (const auto& g : games_) out.push_back(g.season);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void set_stats(std::vector<TeamGameStat> stats) {
    stats_ = std::move(stats);
    reindex();
  }
  void set_drives(std::vector<DriveRecord> drives) {
    drives_ = std::move(drives);
  }

 private:
  void reindex() {
    game_index_.clear();
    stat_index_.clear();
    play_ranges_.clear();
    for (std::size_t i = 0; i < games_.size(); ++i)
      game_index_.emplace(games_[i].game_id, i);
    for (std::size_t i = 0; i < stats_.size(); ++i)
      stat_index_.emplace(std::make_pair(stats_[i].game_id, stats_[i].team), i);
    std::size_t i = 0;
    while (i < plays_.size()) {
      std::size_t j = i;
      while (j < plays_.size() && plays_[j].game_id == plays_[i].game_id) ++j;
      // parse_plays guarantees each game's plays are contiguous.
      play_ranges_.emplace(plays_[i].game_id, std::make_pair(i, j));
      i = j;
    }
  }

  std::vector<GameRecord> games_;
  std::vector<PlayRecord> plays_;
  std::vector<TeamGameStat> stats_;
  std::vector<DriveRecord> drives_;
  std::map<std::string, std::size_t> game_index_;
  std::map<std::pair<std::string, std::string>, std::size_t> stat_index_;
  std::map<std::string, std::pair<std::size_t, std::size_t>> play_ranges_;
};

}  // namespace gridiron
