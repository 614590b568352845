#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "gridiron/core/csv.hpp"
#include "gridiron/core/types.hpp"

namespace gridiron {

inline const std::vector<std::string> kGamesHeader = {
    "game_id",   "season",     "week",       "home_team",
    "away_team", "home_score", "away_score", "is_postseason"};

inline const std::vector<std::string> kPlaysHeader = {
    "game_id",      "play_index",    "quarter",         "clock_remaining",
    "offense",      "play_type",     "yardline_100",    "down",
    "yards_to_go",  "yards_gained",  "points_scored",   "attempt_success",
    "turnover"};

inline const std::vector<std::string> kStatsHeader = {
    "game_id",       "team",      "total_yards", "passing_yards",
    "rushing_yards", "penalty_yards", "turnovers",   "possession_seconds"};

namespace detail {

inline int require_int(const csv::Reader& r, const csv::Reader::Row& row,
                       std::size_t k, const char* name) {
  auto v = csv::to_int(r.at(row, k));
  if (!v) throw csv::malformed(r, row, std::string("bad integer in ") + name);
  return static_cast<int>(*v);
}

inline std::optional<int> optional_int(const csv::Reader& r,
                                       const csv::Reader::Row& row,
                                       std::size_t k, const char* name) {
  if (r.at(row, k).empty()) return std::nullopt;
  return require_int(r, row, k, name);
}

inline bool require_bool(const csv::Reader& r, const csv::Reader::Row& row,
                         std::size_t k, const char* name) {
  auto v = csv::to_bool(r.at(row, k));
  if (!v) throw csv::malformed(r, row, std::string("bad boolean in ") + name);
  return *v;
}

inline void write_header(std::ostream& out,
                         const std::vector<std::string>& header) {
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << '\n';
}

inline std::string opt(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string();
}

inline std::string opt(const std::optional<bool>& v) {
  if (!v) return {};
  return *v ? "true" : "false";
}

}  // namespace detail

inline std::vector<GameRecord> parse_games(std::istream& in,
                                           const std::string& source = "games.csv") {
  csv::Reader r(in, kGamesHeader, source);
  std::vector<GameRecord> out;
  std::set<std::string> seen;
  for (const auto& row : r.rows()) {
    GameRecord g;
    g.game_id = r.at(row, 0);
    if (g.game_id.empty()) throw csv::malformed(r, row, "empty game_id");
    g.season = detail::require_int(r, row, 1, "season");
    g.week = detail::require_int(r, row, 2, "week");
    g.home_team = r.at(row, 3);
    g.away_team = r.at(row, 4);
    g.home_score = detail::require_int(r, row, 5, "home_score");
    g.away_score = detail::require_int(r, row, 6, "away_score");
    g.is_postseason = detail::require_bool(r, row, 7, "is_postseason");
    if (g.home_team.empty() || g.away_team.empty())
      throw csv::malformed(r, row, "empty team code");
    if (g.home_team == g.away_team)
      throw csv::malformed(r, row, "home_team equals away_team");
    if (g.home_score < 0 || g.away_score < 0)
      throw csv::malformed(r, row, "negative score");
    if (g.week < 1) throw csv::malformed(r, row, "week must be >= 1");
    if (!g.is_postseason && g.week > 17)
      throw csv::malformed(r, row, "regular-season week outside 1..17");
    if (!seen.insert(g.game_id).second)
      throw Error(ErrorCode::DuplicateGameId,
                  source + " line " + std::to_string(row.line) +
                      ": duplicate game_id '" + g.game_id + "'");
    out.push_back(std::move(g));
  }
  return out;
}

namespace detail {

inline void check_points(const csv::Reader& r, const csv::Reader::Row& row,
                         const PlayRecord& p) {
  switch (p.points_scored) {
    case 0:
      return;
    case 1:
      if (p.play_type == PlayType::ExtraPoint) return;
      break;
    case 2:
      if (p.play_type == PlayType::TwoPointAttempt || is_scrimmage(p.play_type))
        return;
      break;
    case 3:
      if (p.play_type == PlayType::FieldGoal) return;
      break;
    case 6:
      if (p.play_type != PlayType::ExtraPoint &&
          p.play_type != PlayType::TwoPointAttempt &&
          p.play_type != PlayType::Kneel)
        return;
      break;
    default:
      throw csv::malformed(r, row, "points_scored must be one of 0,1,2,3,6");
  }
  throw csv::malformed(r, row,
                       "points_scored=" + std::to_string(p.points_scored) +
                           " not allowed for play_type " +
                           std::string(to_string(p.play_type)));
}

}  // namespace detail

inline std::vector<PlayRecord> parse_plays(std::istream& in,
                                           const std::string& source = "plays.csv") {
  csv::Reader r(in, kPlaysHeader, source);
  std::vector<PlayRecord> out;
  std::set<std::string> closed_games;
  for (const auto& row : r.rows()) {
    PlayRecord p;
    p.game_id = r.at(row, 0);
    if (p.game_id.empty()) throw csv::malformed(r, row, "empty game_id");
    p.play_index = detail::require_int(r, row, 1, "play_index");
    p.quarter = detail::require_int(r, row, 2, "quarter");
    if (p.quarter < 1 || p.quarter > 5)
      throw csv::malformed(r, row, "quarter outside 1..5");
    p.clock_remaining = detail::require_int(r, row, 3, "clock_remaining");
    if (p.clock_remaining < 0 || p.clock_remaining > 900)
      throw csv::malformed(r, row, "clock_remaining outside 0..900");
    p.offense = r.at(row, 4);
    if (p.offense.empty()) throw csv::malformed(r, row, "empty offense");

    auto type = parse_play_type(r.at(row, 5));
    if (!type)
      throw Error(ErrorCode::UnknownEnumValue,
                  source + " line " + std::to_string(row.line) +
                      ": unknown play_type '" + r.at(row, 5) + "'");
    p.play_type = *type;

    p.yardline_100 = detail::optional_int(r, row, 6, "yardline_100");
    if (p.yardline_100 && (*p.yardline_100 < 1 || *p.yardline_100 > 99))
      throw csv::malformed(r, row, "yardline_100 outside 1..99");
    if (!p.yardline_100 && is_scrimmage(p.play_type))
      throw csv::malformed(r, row, "scrimmage play without yardline_100");

    p.down = detail::optional_int(r, row, 7, "down").value_or(0);
    if (p.down < 0 || p.down > 4) throw csv::malformed(r, row, "down outside 0..4");
    p.yards_to_go = detail::optional_int(r, row, 8, "yards_to_go").value_or(0);
    if (p.yards_to_go < 0) throw csv::malformed(r, row, "negative yards_to_go");
    p.yards_gained = detail::optional_int(r, row, 9, "yards_gained").value_or(0);
    p.points_scored = detail::optional_int(r, row, 10, "points_scored").value_or(0);
    detail::check_points(r, row, p);

    const auto& success = r.at(row, 11);
    if (!success.empty()) {
      auto b = csv::to_bool(success);
      if (!b) throw csv::malformed(r, row, "bad boolean in attempt_success");
      p.attempt_success = *b;
    }
    if (!p.attempt_success &&
        (is_kick_attempt(p.play_type) || p.is_fourth_down_attempt()))
      throw csv::malformed(r, row,
                           "attempt_success required for " +
                               std::string(to_string(p.play_type)) +
                               (p.is_fourth_down_attempt() ? " on fourth down" : ""));

    const auto& to = r.at(row, 12);
    if (!to.empty()) {
      auto t = parse_turnover(to);
      if (!t)
        throw Error(ErrorCode::UnknownEnumValue,
                    source + " line " + std::to_string(row.line) +
                        ": unknown turnover '" + to + "'");
      p.turnover = *t;
    }

    if (!out.empty() && out.back().game_id == p.game_id) {
      if (p.play_index <= out.back().play_index)
        throw Error(ErrorCode::NonMonotonePlayIndex,
                    source + " line " + std::to_string(row.line) + ": play_index " +
                        std::to_string(p.play_index) + " not above " +
                        std::to_string(out.back().play_index) + " in game " +
                        p.game_id);
    } else {
      if (!out.empty()) closed_games.insert(out.back().game_id);
      if (closed_games.count(p.game_id))
        throw csv::malformed(r, row, "plays of game " + p.game_id +
                                         " are not contiguous");
    }
    out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<TeamGameStat> parse_stats(std::istream& in,
                                             const std::string& source = "stats.csv") {
  csv::Reader r(in, kStatsHeader, source);
  std::vector<TeamGameStat> out;
  for (const auto& row : r.rows()) {
    TeamGameStat s;
    s.game_id = r.at(row, 0);
    s.team = r.at(row, 1);
    if (s.game_id.empty() || s.team.empty())
      throw csv::malformed(r, row, "empty key column");
    s.total_yards = detail::require_int(r, row, 2, "total_yards");
    s.passing_yards = detail::require_int(r, row, 3, "passing_yards");
    s.rushing_yards = detail::require_int(r, row, 4, "rushing_yards");
    s.penalty_yards = detail::require_int(r, row, 5, "penalty_yards");
    s.turnovers = detail::require_int(r, row, 6, "turnovers");
    s.possession_seconds = detail::require_int(r, row, 7, "possession_seconds");
    out.push_back(std::move(s));
  }
  return out;
}

inline void write_games(std::ostream& out, const std::vector<GameRecord>& games) {
  detail::write_header(out, kGamesHeader);
  for (const auto& g : games)
    out << csv::escape_field(g.game_id) << ',' << g.season << ',' << g.week << ','
        << csv::escape_field(g.home_team) << ',' << csv::escape_field(g.away_team)
        << ',' << g.home_score << ',' << g.away_score << ','
        << (g.is_postseason ? "true" : "false") << '\n';
}

inline void write_plays(std::ostream& out, const std::vector<PlayRecord>& plays) {
  detail::write_header(out, kPlaysHeader);
  for (const auto& p : plays)
    out << csv::escape_field(p.game_id) << ',' << p.play_index << ',' << p.quarter
        << ',' << p.clock_remaining << ',' << csv::escape_field(p.offense) << ','
        << to_string(p.play_type) << ',' << detail::opt(p.yardline_100) << ','
        << p.down << ',' << p.yards_to_go << ',' << p.yards_gained << ','
        << p.points_scored << ',' << detail::opt(p.attempt_success) << ','
        << to_string(p.turnover) << '\n';
}

inline void write_stats(std::ostream& out, const std::vector<TeamGameStat>& stats) {
  detail::write_header(out, kStatsHeader);
  for (const auto& s : stats)
    out << csv::escape_field(s.game_id) << ',' << csv::escape_field(s.team) << ','
        << s.total_yards << ',' << s.passing_yards << ',' << s.rushing_yards << ','
        << s.penalty_yards << ',' << s.turnovers << ',' << s.possession_seconds
        << '\n';
}

inline std::vector<GameRecord> parse_games(const std::filesystem::path& path) {
  auto in = csv::open_input(path.string());
  return parse_games(in, path.string());
}

inline std::vector<PlayRecord> parse_plays(const std::filesystem::path& path) {
  auto in = csv::open_input(path.string());
  return parse_plays(in, path.string());
}

inline std::vector<TeamGameStat> parse_stats(const std::filesystem::path& path) {
  auto in = csv::open_input(path.string());
  return parse_stats(in, path.string());
}

// Writes games.csv, plays.csv (when present) and stats.csv (when present).
inline void write_dataset(const std::filesystem::path& dir,
                          const SeasonDataset& ds) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("games.csv");
    write_games(out, ds.games());
  }
  if (ds.has_plays()) {
    auto out = open("plays.csv");
    write_plays(out, ds.plays());
  }
  if (ds.has_stats()) {
    auto out = open("stats.csv");
    write_stats(out, ds.stats());
  }
}

}  // namespace gridiron
