#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gridiron/core/types.hpp"
#include "gridiron/stats/rate_curve.hpp"
#include "gridiron/stats/tests.hpp"

namespace gridiron::decision {

// Snap depth (7) plus end zone (10): a kick from yardline_100 = y travels y + 17.
inline constexpr int kFieldGoalExtraYards = 17;
// A drive after a touchback starts this many yards from the goal line.
inline constexpr int kTouchbackYardsToGoal = 80;
// Field-position bins with fewer attempts fall back to the adjusted rate.
inline constexpr long long kMinFieldPositionTrials = 20;
// Yards-to-go range (inclusive) that defines the adjusted conversion rate.
inline constexpr int kAdjustedMaxYardsToGo = 10;

inline constexpr double kTouchdownPoints = 6.0;
inline constexpr double kFieldGoalPoints = 3.0;

struct DriveOutcomeBin {
  double lo = 0.0;
  double hi = 0.0;
  long long drives = 0;
  long long touchdowns = 0;
  long long field_goals = 0;
  long long failures = 0;
  std::optional<double> pi_td;
  std::optional<double> pi_fg;
  std::optional<double> pi_fail;
};

struct FourthDownCurves {
  double bin_width = 5.0;
  stats::RateCurve conv_by_fieldpos;  // own-goal scale l = 100 - yardline_100
  stats::RateCurve conv_by_distance;  // yards to go, one-yard bins
  stats::RateCurve fg_by_distance;    // kick distance
  std::vector<DriveOutcomeBin> drive_outcome_by_start;  // start yards to goal
  double avg_drive_length = 0.0;
  long long drive_count = 0;

  std::optional<double> overall_conversion_rate;
  // Unweighted mean of the per-yardage rates for 1..10 yards to go.
  std::optional<double> adjusted_conversion_rate;
  std::optional<double> fg_overall_rate;
  // Fourth-down situations (any down-4 scrimmage play) by own-goal yardline l.
  std::array<long long, 101> fourth_down_situations{};

  // Touchdown / field-goal probability of a drive starting `yards_to_goal`
  // out, taken from the nearest populated bin.
  std::optional<std::pair<double, double>> scoring_probabilities(double yards_to_goal) const {
    const DriveOutcomeBin* best = nullptr;
    double best_dist = 0.0;
    for (const auto& b : drive_outcome_by_start) {
      if (b.drives == 0) continue;
      double d = yards_to_goal < b.lo ? b.lo - yards_to_goal
                                      : (yards_to_goal >= b.hi ? yards_to_goal - b.hi : 0.0);
      if (!best || d < best_dist) {
        best = &b;
        best_dist = d;
      }
    }
    if (!best) return std::nullopt;
    return std::make_pair(*best->pi_td, *best->pi_fg);
  }
};

inline std::vector<DriveOutcomeBin> drive_outcome_curve(std::span<const DriveRecord> drives,
                                                        std::span<const double> edges) {
  std::vector<DriveOutcomeBin> bins;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
  {
    DriveOutcomeBin b;
    b.lo = edges[i];
    b.hi = edges[i + 1];
    bins.push_back(b);
  }
  for (const auto& d : drives) {
    // Drives cut off by the clock have no outcome.
    if (d.outcome == DriveOutcome::EndHalf || d.outcome == DriveOutcome::EndGame) continue;
    double v = d.start_yards_to_goal;
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    if (v < edges.front() || it == edges.end()) continue;
    auto& b = bins[static_cast<std::size_t>(it - edges.begin()) - 1];
    b.drives += 1;
    if (d.outcome == DriveOutcome::Touchdown)
      b.touchdowns += 1;
    else if (d.outcome == DriveOutcome::FieldGoal)
      b.field_goals += 1;
    else
      b.failures += 1;
  }
  for (auto& b : bins) {
    if (b.drives == 0) continue;
    double n = static_cast<double>(b.drives);
    b.pi_td = b.touchdowns / n;
    b.pi_fg = b.field_goals / n;
    b.pi_fail = b.failures / n;
  }
  return bins;
}

inline FourthDownCurves fourth_down_curves(const SeasonDataset& ds, double bin_width = 5.0) {
  if (!ds.has_plays()) throw Error(ErrorCode::NoPlays, "fourth-down analysis needs plays");
  if (ds.drives().empty()) throw Error(ErrorCode::NoDrives, "no drives derived");

  FourthDownCurves c;
  c.bin_width = bin_width;
  std::vector<stats::RateEvent> by_pos, by_dist, fg;
  for (const auto& p : ds.plays()) {
    if (p.down == 4 && is_scrimmage(p.play_type) && p.yardline_100)
      c.fourth_down_situations[static_cast<std::size_t>(100 - *p.yardline_100)] += 1;
    if (p.is_fourth_down_attempt() && p.yardline_100) {
      bool ok = p.attempt_success.value_or(false);
      by_pos.push_back({static_cast<double>(100 - *p.yardline_100), ok});
      by_dist.push_back({static_cast<double>(p.yards_to_go), ok});
    }
    if (p.play_type == PlayType::FieldGoal && p.yardline_100)
      fg.push_back({static_cast<double>(*p.yardline_100 + kFieldGoalExtraYards),
                    p.attempt_success.value_or(false)});
  }

  auto pos_edges = stats::uniform_edges(0.0, 100.0, bin_width);
  c.conv_by_fieldpos = stats::binned_rate(by_pos, pos_edges);

  std::vector<double> dist_edges;
  for (int y = 0; y <= 20; ++y) dist_edges.push_back(y);
  dist_edges.push_back(100.0);  // 20+ yards to go
  c.conv_by_distance = stats::binned_rate(by_dist, dist_edges);

  auto fg_edges = stats::uniform_edges(0.0, 100.0 + kFieldGoalExtraYards, bin_width);
  c.fg_by_distance = stats::binned_rate(fg, fg_edges);

  c.drive_outcome_by_start = drive_outcome_curve(ds.drives(), pos_edges);

  double total = 0.0;
  for (const auto& d : ds.drives()) total += d.yards_gained;
  c.drive_count = static_cast<long long>(ds.drives().size());
  c.avg_drive_length = total / static_cast<double>(ds.drives().size());
  if (!(c.avg_drive_length > 0.0))
    throw Error(ErrorCode::NoDrives, "mean drive length is not positive");

  if (!by_pos.empty()) {
    long long ok = 0;
    for (const auto& e : by_pos) ok += e.success;
    c.overall_conversion_rate = static_cast<double>(ok) / static_cast<double>(by_pos.size());
  }
  double sum = 0.0;
  int populated = 0;
  for (int y = 1; y <= kAdjustedMaxYardsToGo; ++y)
    if (auto r = c.conv_by_distance.rate[static_cast<std::size_t>(y)]) {
      sum += *r;
      ++populated;
    }
  if (populated > 0) c.adjusted_conversion_rate = sum / populated;
  if (c.fg_by_distance.total_trials() > 0)
    c.fg_overall_rate = static_cast<double>(c.fg_by_distance.total_successes()) /
                        static_cast<double>(c.fg_by_distance.total_trials());
  return c;
}

// Expected number of fourth downs to convert from own-goal yardline l.
inline double gamma(double l, double avg_drive_length) {
  if (!(l >= 1.0 && l <= 99.0)) throw Error(ErrorCode::OutOfRange, "l must lie in [1, 99]");
  if (!(avg_drive_length > 0.0))
    throw Error(ErrorCode::OutOfRange, "average drive length must be positive");
  return (100.0 - l) / avg_drive_length;
}

enum class Recommendation { GoForIt, KickOrPunt };

constexpr std::string_view to_string(Recommendation r) {
  return r == Recommendation::GoForIt ? "go_for_it" : "kick_or_punt";
}

inline Recommendation recommend(double e_plus, double e_minus) {
  return e_plus - e_minus > 0.0 ? Recommendation::GoForIt : Recommendation::KickOrPunt;
}

struct PointBenefit {
  int l = 0;
  double s_conv = 0.0;
  double gamma = 0.0;
  double s_fg = 0.0;
  double dpi_td = 0.0;
  double dpi_fg = 0.0;
  double e_plus = 0.0;
  double e_minus = 0.0;
  double e_net = 0.0;
};

// Mean-field gain of going for it: converting gamma times for a touchdown
// against the forgone field goal plus the opponent's improved scoring odds.
inline PointBenefit mean_field_benefit(double s_conv, double gamma_l, double s_fg,
                                       double dpi_fg, double dpi_td) {
  PointBenefit b;
  b.s_conv = s_conv;
  b.gamma = gamma_l;
  b.s_fg = s_fg;
  b.dpi_fg = dpi_fg;
  b.dpi_td = dpi_td;
  b.e_plus = kTouchdownPoints * std::pow(s_conv, gamma_l);
  b.e_minus = kFieldGoalPoints * s_fg +
              (kFieldGoalPoints * dpi_fg + kTouchdownPoints * dpi_td);
  b.e_net = b.e_plus - b.e_minus;
  return b;
}

inline double conversion_rate_at(int l, const FourthDownCurves& curves) {
  auto b = curves.conv_by_fieldpos.bin_of(l);
  if (b && curves.conv_by_fieldpos.trials[*b] >= kMinFieldPositionTrials)
    return *curves.conv_by_fieldpos.rate[*b];
  if (curves.adjusted_conversion_rate) return *curves.adjusted_conversion_rate;
  if (curves.overall_conversion_rate) return *curves.overall_conversion_rate;
  throw Error(ErrorCode::CurveGap, "no fourth-down conversion data near l=" + std::to_string(l));
}

// Zero once the kick is longer than any populated bin reaches.
inline double field_goal_rate_at(int l, const FourthDownCurves& curves) {
  const auto& fg = curves.fg_by_distance;
  double distance = (100 - l) + kFieldGoalExtraYards;
  auto last = fg.last_populated();
  if (!last || distance >= fg.bin_edges[*last + 1]) return 0.0;
  if (auto r = fg.rate_at(distance)) return *r;
  return fg.nearest_rate(distance).value_or(0.0);
}

inline PointBenefit expected_point_benefit(int l, const FourthDownCurves& curves,
                                           std::optional<double> s_conv_override = {}) {
  if (l < 1 || l > 99) throw Error(ErrorCode::OutOfRange, "l must lie in [1, 99]");
  if (s_conv_override && !(*s_conv_override >= 0.0 && *s_conv_override <= 1.0))
    throw Error(ErrorCode::OutOfRange, "conversion rate override outside [0, 1]");
  double s = s_conv_override ? *s_conv_override : conversion_rate_at(l, curves);
  double g = gamma(l, curves.avg_drive_length);
  double s_fg = field_goal_rate_at(l, curves);
  // After a failed attempt the opponent takes over needing l yards.
  auto takeover = curves.scoring_probabilities(l);
  auto baseline = curves.scoring_probabilities(kTouchbackYardsToGoal);
  if (!takeover || !baseline)
    throw Error(ErrorCode::CurveGap, "no drive outcome data");
  double dpi_td = takeover->first - baseline->first;
  double dpi_fg = takeover->second - baseline->second;
  auto b = mean_field_benefit(s, g, s_fg, dpi_fg, dpi_td);
  b.l = l;
  return b;
}

struct DecisionRow {
  PointBenefit benefit;
  Recommendation recommend = Recommendation::KickOrPunt;
};

struct DecisionChart {
  std::vector<DecisionRow> rows;  // l = 1..99
  double mean_net_uniform = 0.0;
  std::optional<double> mean_net_weighted;  // by observed fourth-down situations
  double positive_fraction = 0.0;
  std::optional<stats::TestResult> net_test;  // one-sided, H1: mean e_net > 0
};

inline DecisionChart decision_chart(const FourthDownCurves& curves,
                                    std::optional<double> s_conv_override = {}) {
  DecisionChart chart;
  std::vector<double> nets;
  double wsum = 0.0, wnet = 0.0;
  int positive = 0;
  for (int l = 1; l <= 99; ++l) {
    auto b = expected_point_benefit(l, curves, s_conv_override);
    chart.rows.push_back({b, recommend(b.e_plus, b.e_minus)});
    nets.push_back(b.e_net);
    if (b.e_net > 0.0) ++positive;
    double w = static_cast<double>(curves.fourth_down_situations[static_cast<std::size_t>(l)]);
    wsum += w;
    wnet += w * b.e_net;
  }
  chart.mean_net_uniform = stats::mean_sd(nets).mean;
  if (wsum > 0.0) chart.mean_net_weighted = wnet / wsum;
  chart.positive_fraction = positive / 99.0;
  try {
    chart.net_test = stats::one_sample_t_test(nets, 0.0, stats::Alternative::Greater);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZeroVariance) throw;
  }
  return chart;
}

}  // namespace gridiron::decision
