#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gridiron/core/team_stats.hpp"
#include "gridiron/core/types.hpp"
#include "gridiron/stats/tests.hpp"

namespace gridiron::decision {

// Cumulative pass ratio of the eventual winner and loser at the end of each
// regulation quarter. Tied games are skipped.
struct QuarterRatios {
  // [quarter - 1][game], only games whose cumulative total yards are positive
  // for that side and quarter carry a value.
  std::array<std::vector<std::optional<double>>, 4> winner;
  std::array<std::vector<std::optional<double>>, 4> loser;
  std::array<std::optional<double>, 4> winner_mean;
  std::array<std::optional<double>, 4> loser_mean;
  // Paired t-test of r(Q4) against r(Q3); empty when undefined (too few
  // games or no change at all).
  std::optional<stats::TestResult> winner_q3_q4;
  std::optional<stats::TestResult> loser_q3_q4;
  std::string winner_test_note;
  std::string loser_test_note;
};

namespace detail {

inline std::optional<stats::TestResult> try_paired(const std::vector<double>& a,
                                                   const std::vector<double>& b,
                                                   std::string& note) {
  try {
    return stats::paired_t_test(a, b);
  } catch (const Error& e) {
    note = e.what();
    return std::nullopt;
  }
}

}  // namespace detail

inline QuarterRatios ratio_by_quarter(const SeasonDataset& ds) {
  if (!ds.has_plays()) throw Error(ErrorCode::NoPlays, "ratio analysis needs plays");
  QuarterRatios out;
  for (const auto& g : ds.games()) {
    if (g.is_tie()) continue;
    auto [b, e] = ds.play_range(g.game_id);
    if (b == e) continue;
    // Yards gained by each side through each quarter.
    std::array<std::array<int, 4>, 2> pass{}, rush{};
    for (std::size_t i = b; i < e; ++i) {
      const auto& p = ds.plays()[i];
      if (p.quarter > 4) continue;
      int side = p.offense == g.winner() ? 0 : 1;
      auto q = static_cast<std::size_t>(p.quarter - 1);
      if (p.play_type == PlayType::Pass)
        pass[side][q] += p.yards_gained;
      else if (p.play_type == PlayType::Rush || p.play_type == PlayType::Kneel)
        rush[side][q] += p.yards_gained;
    }
    for (int side = 0; side < 2; ++side) {
      int cp = 0, cr = 0;
      for (std::size_t q = 0; q < 4; ++q) {
        cp += pass[side][q];
        cr += rush[side][q];
        std::optional<double> r;
        if (cp + cr > 0) r = static_cast<double>(cp) / (cp + cr);
        (side == 0 ? out.winner : out.loser)[q].push_back(r);
      }
    }
  }
  auto summarize = [](const std::array<std::vector<std::optional<double>>, 4>& series,
                      std::array<std::optional<double>, 4>& means,
                      std::optional<stats::TestResult>& test, std::string& note) {
    for (std::size_t q = 0; q < 4; ++q) {
      double s = 0.0;
      int n = 0;
      for (const auto& v : series[q])
        if (v) {
          s += *v;
          ++n;
        }
      if (n) means[q] = s / n;
    }
    std::vector<double> q4, q3;
    for (std::size_t i = 0; i < series[3].size(); ++i)
      if (series[2][i] && series[3][i]) {
        q3.push_back(*series[2][i]);
        q4.push_back(*series[3][i]);
      }
    test = detail::try_paired(q4, q3, note);
  };
  summarize(out.winner, out.winner_mean, out.winner_q3_q4, out.winner_test_note);
  summarize(out.loser, out.loser_mean, out.loser_q3_q4, out.loser_test_note);
  return out;
}

// Minute of regulation play (0-based) at which a play happens.
inline int game_minute(int quarter, int clock_remaining) {
  return (15 * 60 * (quarter - 1) + (900 - clock_remaining)) / 60;
}

struct TurnoverTiming {
  int bin_minutes = 1;
  std::vector<long long> counts;  // regulation bins, index = minute / bin_minutes
  long long overtime = 0;
  long long total = 0;
  // Winner minus loser turnovers through the third quarter, per decided game.
  std::vector<double> winner_through_q3;
  std::vector<double> loser_through_q3;
  std::optional<stats::TestResult> q3_test;
  std::string q3_test_note;
};

inline TurnoverTiming turnover_timing(const SeasonDataset& ds, int bin_minutes = 1) {
  if (!ds.has_plays()) throw Error(ErrorCode::NoPlays, "turnover timing needs plays");
  if (bin_minutes < 1) throw Error(ErrorCode::BadEdges, "bin width must be >= 1 minute");
  TurnoverTiming out;
  out.bin_minutes = bin_minutes;
  out.counts.assign(static_cast<std::size_t>((60 + bin_minutes - 1) / bin_minutes), 0);
  for (const auto& g : ds.games()) {
    auto [b, e] = ds.play_range(g.game_id);
    int winner_tos = 0, loser_tos = 0;
    for (std::size_t i = b; i < e; ++i) {
      const auto& p = ds.plays()[i];
      if (!p.is_turnover()) continue;
      out.total += 1;
      if (p.quarter >= 5) {
        out.overtime += 1;
        continue;
      }
      int minute = game_minute(p.quarter, p.clock_remaining);
      out.counts[static_cast<std::size_t>(std::min(minute, 59) / bin_minutes)] += 1;
      if (p.quarter <= 3 && !g.is_tie()) {
        if (turnover_committer(p, g) == g.winner())
          ++winner_tos;
        else
          ++loser_tos;
      }
    }
    if (b != e && !g.is_tie()) {
      out.winner_through_q3.push_back(winner_tos);
      out.loser_through_q3.push_back(loser_tos);
    }
  }
  out.q3_test = detail::try_paired(out.winner_through_q3, out.loser_through_q3,
                                   out.q3_test_note);
  return out;
}

}  // namespace gridiron::decision
