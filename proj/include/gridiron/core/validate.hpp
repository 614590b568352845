#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gridiron/core/drives.hpp"
#include "gridiron/core/io.hpp"
#include "gridiron/core/team_stats.hpp"
#include "gridiron/core/types.hpp"

namespace gridiron {

struct ValidationIssue {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;

  bool ok() const { return errors.empty(); }
  bool has_error(std::string_view code) const {
    for (const auto& e : errors)
      if (e.code == code) return true;
    return false;
  }
  bool has_warning(std::string_view code) const {
    for (const auto& w : warnings)
      if (w.code == code) return true;
    return false;
  }
};

// Possession of both teams should add up to about one game clock.
inline constexpr int kRegulationSeconds = 3600;
inline constexpr int kPossessionSlack = 900;
inline constexpr int kOvertimeAllowance = 900;

inline ValidationReport validate_dataset(const SeasonDataset& ds) {
  ValidationReport rep;
  auto error = [&](std::string code, std::string msg) {
    rep.errors.push_back({std::move(code), std::move(msg)});
  };
  auto warn = [&](std::string code, std::string msg) {
    rep.warnings.push_back({std::move(code), std::move(msg)});
  };

  std::set<std::string> ids;
  for (const auto& g : ds.games()) {
    if (!ids.insert(g.game_id).second)
      error("DuplicateGameId", "game_id " + g.game_id + " repeated");
    if (g.home_team == g.away_team)
      error("InvariantViolation", "game " + g.game_id + " has identical teams");
    if (!g.is_postseason && (g.week < 1 || g.week > 17))
      error("InvariantViolation", "game " + g.game_id + " week out of range");
    if (g.home_score < 0 || g.away_score < 0)
      error("InvariantViolation", "game " + g.game_id + " has a negative score");
    if (g.is_tie()) warn("TieGame", "game " + g.game_id + " ended tied");
  }

  std::set<std::string> overtime_games;
  std::set<std::string> games_with_plays;
  for (const auto& p : ds.plays()) {
    games_with_plays.insert(p.game_id);
    const auto* g = ds.find_game(p.game_id);
    if (!g) {
      error("ReferentialIntegrity",
            "play " + std::to_string(p.play_index) + " references unknown game " +
                p.game_id);
      continue;
    }
    if (!g->involves(p.offense))
      error("ReferentialIntegrity", "play " + std::to_string(p.play_index) +
                                        " of game " + p.game_id + " has offense " +
                                        p.offense + " not in the game");
    if (p.quarter == 5) overtime_games.insert(p.game_id);
  }
  if (ds.has_plays())
    for (const auto& g : ds.games())
      if (!games_with_plays.count(g.game_id))
        warn("MissingPlays", "game " + g.game_id + " has no plays");

  std::map<std::string, int> rows_per_game;
  std::map<std::string, int> possession_per_game;
  std::set<std::pair<std::string, std::string>> stat_keys;
  for (const auto& s : ds.stats()) {
    const auto* g = ds.find_game(s.game_id);
    if (!g) {
      error("ReferentialIntegrity", "stat row for " + s.team +
                                        " references unknown game " + s.game_id);
      continue;
    }
    if (!g->involves(s.team))
      error("ReferentialIntegrity",
            "stat row team " + s.team + " not in game " + s.game_id);
    if (!stat_keys.insert({s.game_id, s.team}).second)
      error("DuplicateStatRow", "two stat rows for " + s.team + " in " + s.game_id);
    rows_per_game[s.game_id] += 1;
    possession_per_game[s.game_id] += s.possession_seconds;
    std::string where = s.game_id + "/" + s.team;
    if (s.passing_yards + s.rushing_yards != s.total_yards)
      error("InvariantViolation", where + ": passing + rushing != total yards");
    if (s.turnovers < 0) error("InvariantViolation", where + ": negative turnovers");
    if (s.penalty_yards < 0)
      error("InvariantViolation", where + ": negative penalty yards");
    if (s.possession_seconds < 0 || s.possession_seconds > 4500)
      error("InvariantViolation", where + ": possession outside 0..4500 s");
  }
  if (ds.has_stats()) {
    for (const auto& g : ds.games()) {
      auto it = rows_per_game.find(g.game_id);
      int n = it == rows_per_game.end() ? 0 : it->second;
      if (n == 0) {
        warn("MissingStats", "game " + g.game_id + " has no stat rows");
        continue;
      }
      if (n != 2)
        error("StatRowCount", "game " + g.game_id + " has " + std::to_string(n) +
                                  " stat rows, expected 2");
      int total = possession_per_game[g.game_id];
      int hi = kRegulationSeconds + kPossessionSlack +
               (overtime_games.count(g.game_id) ? kOvertimeAllowance : 0);
      int lo = kRegulationSeconds - kPossessionSlack;
      if (total < lo || total > hi)
        warn("PossessionSum", "game " + g.game_id + " possession totals " +
                                  std::to_string(total) + " s");
    }
  }

  const auto& drives = ds.drives();
  for (std::size_t i = 1; i < drives.size(); ++i) {
    const auto& a = drives[i - 1];
    const auto& b = drives[i];
    if (a.game_id == b.game_id && a.offense == b.offense &&
        a.outcome != DriveOutcome::EndHalf)
      warn("DriveAlternation", "game " + a.game_id + ": consecutive drives by " +
                                   a.offense + " at play " +
                                   std::to_string(b.first_play_index));
  }
  return rep;
}

// Loads games.csv plus whichever of plays.csv / stats.csv exist. Drives are
// derived from plays; stats are aggregated from plays when stats.csv is absent.
inline SeasonDataset load_dataset(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw Error(ErrorCode::IoError, "data directory not found: " + dir.string());
  auto games = parse_games(dir / "games.csv");
  std::vector<PlayRecord> plays;
  std::vector<TeamGameStat> stats;
  if (fs::exists(dir / "plays.csv")) plays = parse_plays(dir / "plays.csv");
  if (fs::exists(dir / "stats.csv")) {
    stats = parse_stats(dir / "stats.csv");
  } else if (!plays.empty()) {
    std::set<std::string> with_plays;
    for (const auto& p : plays) with_plays.insert(p.game_id);
    std::vector<GameRecord> covered;
    for (const auto& g : games)
      if (with_plays.count(g.game_id)) covered.push_back(g);
    stats = aggregate_team_stats(plays, covered);
  }
  std::vector<DriveRecord> drives;
  if (!plays.empty()) drives = derive_drives(plays, games);
  return SeasonDataset(std::move(games), std::move(plays), std::move(stats),
                       std::move(drives));
}

// Throws InvalidDataset listing the first few errors when validation fails.
inline void require_valid(const ValidationReport& rep) {
  if (rep.ok()) return;
  std::string msg = std::to_string(rep.errors.size()) + " validation error(s)";
  for (std::size_t i = 0; i < rep.errors.size() && i < 5; ++i)
    msg += "; " + rep.errors[i].code + ": " + rep.errors[i].message;
  throw Error(ErrorCode::InvalidDataset, msg);
}

}  // namespace gridiron
