#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridiron/core/types.hpp"
#include "gridiron/stats/tests.hpp"

namespace gridiron::decision {

struct Rate {
  long long successes = 0;
  long long attempts = 0;

  std::optional<double> value() const {
    if (attempts == 0) return std::nullopt;
    return static_cast<double>(successes) / static_cast<double>(attempts);
  }
};

struct PatRates {
  Rate two_point;
  Rate kick;
};

struct PatFilter {
  std::optional<int> season;
  std::optional<TeamCode> team;
};

inline PatRates pat_rates(const SeasonDataset& ds, const PatFilter& filter = {}) {
  if (!ds.has_plays()) throw Error(ErrorCode::NoPlays, "PAT analysis needs plays");
  PatRates r;
  for (const auto& p : ds.plays()) {
    if (p.play_type != PlayType::ExtraPoint && p.play_type != PlayType::TwoPointAttempt)
      continue;
    if (filter.team && p.offense != *filter.team) continue;
    if (filter.season) {
      const auto* g = ds.find_game(p.game_id);
      if (!g || g->season != *filter.season) continue;
    }
    auto& rate = p.play_type == PlayType::ExtraPoint ? r.kick : r.two_point;
    rate.attempts += 1;
    if (p.attempt_success.value_or(false)) rate.successes += 1;
  }
  return r;
}

// Expected point differential of going for two instead of kicking, per
// touchdown.
inline double pat_expected_benefit(double s_two_point, double s_kick) {
  if (!(s_two_point >= 0.0 && s_two_point <= 1.0 && s_kick >= 0.0 && s_kick <= 1.0))
    throw Error(ErrorCode::OutOfRange, "success rates must lie in [0, 1]");
  return 2.0 * s_two_point - 1.0 * s_kick;
}

struct PatTeamRow {
  TeamCode team;
  PatRates rates;
  std::optional<double> expected_benefit;  // null without both attempt kinds
};

inline std::vector<PatTeamRow> pat_team_table(const SeasonDataset& ds) {
  if (!ds.has_plays()) throw Error(ErrorCode::NoPlays, "PAT analysis needs plays");
  std::set<TeamCode> teams;
  for (const auto& g : ds.games()) {
    teams.insert(g.home_team);
    teams.insert(g.away_team);
  }
  std::map<TeamCode, PatRates> by_team;
  for (const auto& p : ds.plays()) {
    if (p.play_type != PlayType::ExtraPoint && p.play_type != PlayType::TwoPointAttempt)
      continue;
    auto& rate = p.play_type == PlayType::ExtraPoint ? by_team[p.offense].kick
                                                      : by_team[p.offense].two_point;
    rate.attempts += 1;
    if (p.attempt_success.value_or(false)) rate.successes += 1;
  }
  std::vector<PatTeamRow> rows;
  for (const auto& t : teams) {
    PatTeamRow row{t, by_team[t], std::nullopt};
    auto s2 = row.rates.two_point.value();
    auto sk = row.rates.kick.value();
    if (s2 && sk) row.expected_benefit = pat_expected_benefit(*s2, *sk);
    rows.push_back(std::move(row));
  }
  return rows;
}

struct PatSeasonRow {
  int season = 0;
  PatRates rates;
};

struct PatRuleChange {
  std::vector<PatSeasonRow> seasons;
  int final_season = 0;
  stats::TestResult kick_test;       // final season vs pooled earlier seasons
  stats::TestResult two_point_test;
};

// Yearly PAT rates and a two-proportion test of the last season against all
// earlier seasons pooled.
inline PatRuleChange pat_rule_change_test(const SeasonDataset& ds,
                                          bool continuity_correction = false) {
  if (!ds.has_plays()) throw Error(ErrorCode::NoPlays, "PAT analysis needs plays");
  std::map<int, PatRates> by_season;
  for (const auto& p : ds.plays()) {
    if (p.play_type != PlayType::ExtraPoint && p.play_type != PlayType::TwoPointAttempt)
      continue;
    const auto* g = ds.find_game(p.game_id);
    if (!g) continue;
    auto& rates = by_season[g->season];
    auto& rate = p.play_type == PlayType::ExtraPoint ? rates.kick : rates.two_point;
    rate.attempts += 1;
    if (p.attempt_success.value_or(false)) rate.successes += 1;
  }
  if (by_season.size() < 2)
    throw Error(ErrorCode::SingleSeason, "rule-change test needs at least two seasons");

  PatRuleChange out;
  PatRates earlier;
  for (const auto& [season, rates] : by_season) out.seasons.push_back({season, rates});
  out.final_season = out.seasons.back().season;
  for (std::size_t i = 0; i + 1 < out.seasons.size(); ++i) {
    const auto& r = out.seasons[i].rates;
    earlier.kick.successes += r.kick.successes;
    earlier.kick.attempts += r.kick.attempts;
    earlier.two_point.successes += r.two_point.successes;
    earlier.two_point.attempts += r.two_point.attempts;
  }
  const auto& last = out.seasons.back().rates;
  out.kick_test = stats::two_proportion_test(last.kick.successes, last.kick.attempts,
                                             earlier.kick.successes, earlier.kick.attempts,
                                             continuity_correction);
  out.two_point_test = stats::two_proportion_test(
      last.two_point.successes, last.two_point.attempts, earlier.two_point.successes,
      earlier.two_point.attempts, continuity_correction);
  return out;
}

}  // namespace gridiron::decision
