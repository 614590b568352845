#pragma once

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gridiron/core/io.hpp"
#include "gridiron/core/table.hpp"
#include "gridiron/core/validate.hpp"
#include "gridiron/fpm/evaluate.hpp"
#include "gridiron/fpm/synth.hpp"
#include "gridiron/model/serialize.hpp"
#include "gridiron/report/tables.hpp"

namespace gridiron::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string data;
  std::string out;
  std::optional<int> season;
  std::optional<int> week;
  int start_week = 6;
  int bootstrap = 1000;
  int recency_k = 5;
  double recency_mult = 2.0;
  double corr_threshold = 0.3;
  double alpha = 0.05;
  double bin_width = 5.0;
  std::uint64_t seed = kDefaultSeed;
  int threads = 1;
  OutputFormat format = OutputFormat::Csv;
  bool compat_x21 = false;
  bool force = false;

  fpm::BootstrapConfig bootstrap_config() const {
    fpm::BootstrapConfig c;
    c.B = bootstrap;
    c.k = recency_k;
    c.recency_multiplier = recency_mult;
    c.corr_threshold = corr_threshold;
    c.alpha = alpha;
    c.seed = seed;
    c.compat_x21 = compat_x21;
    return c;
  }
};

// Thrown for flag combinations the parser cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  const char* extension() const { return cfg_.format == OutputFormat::Csv ? ".csv" : ".jsonl"; }

  // The command's main table: to --out when given, else standard output.
  void primary(const Table& t) const {
    if (cfg_.out.empty()) {
      render(out_, t, cfg_.format);
      return;
    }
    write_file(cfg_.out, t);
  }

  // One of several files of a multi-output command. Without --out only the
  // primary table is printed.
  void file(const std::string& stem, const Table& t) const {
    if (cfg_.out.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(cfg_.out, ec);
    write_file(std::filesystem::path(cfg_.out) / (stem + extension()), t);
  }

  void text(const std::string& name, const std::string& body) const {
    if (cfg_.out.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(cfg_.out, ec);
    auto path = std::filesystem::path(cfg_.out) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    f << body;
  }

  // Multi-output commands print their main table and also store it.
  void main_file(const std::string& stem, const Table& t) const {
    if (cfg_.out.empty())
      render(out_, t, cfg_.format);
    else
      file(stem, t);
  }

 private:
  void write_file(const std::filesystem::path& path, const Table& t) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    render(f, t, cfg_.format);
    if (!f) throw Error(ErrorCode::IoError, "write failed for " + path.string());
  }

  const RunConfig& cfg_;
  std::ostream& out_;
};

inline SeasonDataset load_checked(const RunConfig& cfg, std::ostream& err) {
  if (cfg.data.empty()) throw UsageError("--data is required");
  auto ds = load_dataset(cfg.data);
  auto rep = validate_dataset(ds);
  if (!rep.warnings.empty())
    err << "validation: " << rep.warnings.size() << " warning(s)\n";
  require_valid(rep);
  return ds;
}

inline SeasonDataset season_subset(const SeasonDataset& ds, int season) {
  std::vector<GameRecord> games;
  std::set<std::string> ids;
  for (const auto& g : ds.games())
    if (g.season == season) {
      games.push_back(g);
      ids.insert(g.game_id);
    }
  if (games.empty()) throw Error(ErrorCode::NoGames, "no games in season " + std::to_string(season));
  std::vector<PlayRecord> plays;
  for (const auto& p : ds.plays())
    if (ids.count(p.game_id)) plays.push_back(p);
  std::vector<TeamGameStat> stats;
  for (const auto& s : ds.stats())
    if (ids.count(s.game_id)) stats.push_back(s);
  std::vector<DriveRecord> drives;
  for (const auto& d : ds.drives())
    if (ids.count(d.game_id)) drives.push_back(d);
  return SeasonDataset(std::move(games), std::move(plays), std::move(stats), std::move(drives));
}

inline int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.data.empty()) throw UsageError("--data is required");
  auto ds = load_dataset(cfg.data);
  auto rep = validate_dataset(ds);
  Emitter(cfg, out).primary(report::validation_table(rep));
  err << "validate: " << ds.games().size() << " games, " << ds.plays().size() << " plays, "
      << ds.stats().size() << " stat rows; " << rep.errors.size() << " error(s), "
      << rep.warnings.size() << " warning(s)\n";
  return rep.ok() ? kExitOk : kExitData;
}

inline int cmd_pat(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto all = load_checked(cfg, err);
  auto ds = cfg.season ? season_subset(all, *cfg.season) : all;
  Emitter e(cfg, out);
  e.main_file("pat_team", report::pat_team_table(decision::pat_team_table(ds)));
  e.file("pat_overall", report::pat_rates_table(decision::pat_rates(ds)));
  try {
    auto rc = decision::pat_rule_change_test(all);
    e.file("pat_seasons", report::pat_season_table(rc));
    e.file("pat_tests", report::pat_test_table(rc));
  } catch (const Error& ex) {
    if (ex.code() != ErrorCode::SingleSeason) throw;
    err << "pat: rule-change test skipped (" << ex.what() << ")\n";
  }
  return kExitOk;
}

inline int cmd_fourth_down(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto all = load_checked(cfg, err);
  auto ds = cfg.season ? season_subset(all, *cfg.season) : all;
  auto curves = decision::fourth_down_curves(ds, cfg.bin_width);
  auto chart = decision::decision_chart(curves);
  Emitter e(cfg, out);
  e.main_file("decision_chart", report::decision_chart_table(chart));
  e.file("conversion_by_field_position", report::rate_curve_table(curves.conv_by_fieldpos));
  e.file("conversion_by_yards_to_go", report::rate_curve_table(curves.conv_by_distance));
  e.file("field_goal_by_distance", report::rate_curve_table(curves.fg_by_distance));
  e.file("drive_outcome_by_start", report::drive_outcome_table(curves.drive_outcome_by_start));
  e.file("fourth_down_summary", report::fourth_down_summary_table(curves, chart));
  return kExitOk;
}

inline int cmd_rank(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto ds = load_checked(cfg, err);
  auto book = ranking::build_rank_book(ds.games());
  Emitter(cfg, out).primary(report::rank_table(book, cfg.season, cfg.week));
  return kExitOk;
}

inline int cmd_fit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto ds = load_checked(cfg, err);
  auto book = ranking::build_rank_book(ds.games());
  auto fs = model::build_features(ds, book);
  err << "fit: " << fs.rows.size() << " games; excluded " << fs.excluded_ties << " tie(s), "
      << fs.excluded_first_week << " opening-week game(s), " << fs.excluded_undefined_ratio
      << " with undefined ratio\n";
  auto raw = model::fit(fs.rows);
  auto standardized = model::standardize_fit(fs.rows);
  Emitter e(cfg, out);
  e.main_file("coefficients", report::coefficient_table(raw, standardized));
  e.text("model.json", model::model_to_json(raw));
  e.text("model_standardized.json", model::model_to_json(standardized));
  auto gd = model::game_day_summary(ds);
  e.file("winner_loser_tests", report::game_day_test_table(gd));
  e.file("ecdf_differences", report::ecdf_table(gd));
  e.file("home_advantage", report::home_advantage_table(gd));
  e.file("correlations", report::correlation_table(gd.correlations));
  if (ds.has_plays()) {
    e.file("ratio_by_quarter", report::ratio_by_quarter_table(decision::ratio_by_quarter(ds)));
    e.file("turnover_timing", report::turnover_timing_table(decision::turnover_timing(ds)));
  }
  return kExitOk;
}

inline int cmd_cv(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto ds = load_checked(cfg, err);
  auto book = ranking::build_rank_book(ds.games());
  auto fs = model::build_features(ds, book);
  auto cv = model::cross_validate(fs.rows, 10, cfg.seed, {}, cfg.threads);
  Emitter(cfg, out).primary(report::cv_table(cv));
  return kExitOk;
}

inline int cmd_predict(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.week) throw UsageError("predict requires --week");
  if (*cfg.week < cfg.start_week && !cfg.force)
    throw UsageError("--week " + std::to_string(*cfg.week) + " is before --start-week " +
                     std::to_string(cfg.start_week) + "; pass --force to predict anyway");
  auto boot = cfg.bootstrap_config();
  auto ds = load_checked(cfg, err);
  int season = 0;
  if (cfg.season) {
    season = *cfg.season;
  } else {
    for (const auto& g : ds.games()) season = std::max(season, g.season);
  }
  const int week = *cfg.week;
  auto book = ranking::build_rank_book(ds.games());
  // Train on everything known before kickoff: other seasons plus earlier
  // weeks of this one.
  auto known = [&](int s, int w) { return s != season || w < week; };
  std::vector<model::FeatureDiff> train;
  for (const auto& r : model::build_features(ds, book).rows)
    if (known(r.season, r.week)) train.push_back(r);
  auto m = model::fit(train);
  std::vector<model::TeamStatVector> league;
  for (const auto& g : ds.games()) {
    if (g.is_postseason || !known(g.season, g.week)) continue;
    for (const auto* t : {&g.home_team, &g.away_team})
      if (const auto* s = ds.find_stat(g.game_id, *t))
        if (auto v = model::team_stat_vector(*s)) league.push_back(*v);
  }
  auto blocks = fpm::correlation_blocks(league, boot.corr_threshold);

  std::vector<const GameRecord*> games;
  for (const auto& g : ds.games())
    if (g.season == season && g.week == week && !g.is_postseason) games.push_back(&g);
  if (games.empty())
    throw Error(ErrorCode::NoGames,
                "no games in season " + std::to_string(season) + " week " + std::to_string(week));
  std::vector<fpm::PredictionResult> preds(games.size());
  fpm::detail::parallel_for(games.size(), cfg.threads, [&](std::size_t i) {
    preds[i] = fpm::predict_game(ds, m, book, *games[i], boot, blocks);
  });
  Emitter(cfg, out).primary(report::predictions_table(preds, ds));
  err << "predict: " << preds.size() << " game(s), blocks " << report::blocks_text(blocks)
      << ", rng " << kRngAlgorithm << " seed " << cfg.seed << "\n";
  return kExitOk;
}

inline int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto ds = load_checked(cfg, err);
  fpm::EvalConfig ec;
  ec.boot = cfg.bootstrap_config();
  ec.start_week = cfg.start_week;
  ec.threads = cfg.threads;
  auto rep = fpm::evaluate(ds, ec);
  auto leaks = fpm::audit_leakage(ds, rep);
  Emitter e(cfg, out);
  e.main_file("season_accuracy", report::evaluation_season_table(rep));
  e.file("predictions", report::evaluation_predictions_table(rep));
  e.file("weekly_accuracy", report::evaluation_weekly_table(rep));
  e.file("calibration", report::calibration_table(rep));
  e.file("trend_fits", report::evaluation_fit_table(rep));
  e.file("leakage_audit", report::leakage_table(leaks));
  err << "evaluate: " << rep.total_games() << " games, accuracy " << rep.accuracy()
      << ", baseline " << rep.baseline_accuracy() << ", leakage violations " << leaks.size()
      << "\n";
  return leaks.empty() ? kExitOk : kExitData;
}

inline int cmd_synth(const RunConfig& cfg, std::ostream&, std::ostream& err) {
  if (cfg.out.empty()) throw UsageError("synth requires --out <dir>");
  fpm::SynthParams p;
  p.seed = cfg.seed;
  if (cfg.season) p.first_season = *cfg.season;
  auto ds = fpm::synthesize_seasons(p);
  write_dataset(cfg.out, ds);
  err << "synth: " << ds.games().size() << " games in " << p.n_seasons << " seasons from "
      << p.first_season << " written to " << cfg.out << "\n";
  return kExitOk;
}

inline constexpr const char* kOutputHelp = R"(Outputs (CSV columns; json-lines uses the same keys):
  validate     severity,code,message
  pat          pat_team: team,two_point_successes,two_point_attempts,kick_successes,kick_attempts,expected_benefit
               pat_overall: two_point_*, kick_*, expected_benefit (2*s_two_point - s_kick)
               pat_seasons: season,kick_*,two_point_*   pat_tests: attempt,final_season,rate_difference,z,p_value
  fourth-down  decision_chart: l,e_plus,e_minus,e_net,recommend (l = yards from own goal line)
               conversion_by_field_position / conversion_by_yards_to_go / field_goal_by_distance:
                 bin_lo,bin_hi,trials,successes,rate,ci_low,ci_high (95% Wilson)
               drive_outcome_by_start: start_lo,start_hi,drives,touchdowns,field_goals,failures,pi_td,pi_fg,pi_fail
               fourth_down_summary: quantity,value
  rank         season,week,team,score,rank (snapshot uses games strictly before week)
  fit          coefficients: term,estimate,std_error,p_value,std_estimate,std_std_error,std_p_value
               model.json, model_standardized.json, winner_loser_tests, ecdf_differences (stat,x,ecdf),
               home_advantage, correlations, ratio_by_quarter, turnover_timing
  cv           fold,accuracy (10 stratified folds, rows mean and sd)
  predict      season,week,game_id,home,away,p_home_mean,p_sd,p_value,decision,actual
  evaluate     season_accuracy: season,games,engine_accuracy,baseline_accuracy,predicted_ties,tie_rate,blocks,rng,seed
               predictions (as predict), weekly_accuracy: week,games,accuracy,
               calibration: bucket_lo,bucket_hi,midpoint,games,favorite_wins,win_rate (populated buckets),
               trend_fits: series,n,slope,intercept,r_squared,slope_ci_low,slope_ci_high,
               leakage_audit: game_id,violation
  synth        games.csv and stats.csv for 7 synthetic seasons
Exit codes: 0 success, 1 data or validation error, 2 usage error.)";

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Football analytics: decision analysis, win model and match prediction",
               "gridiron"};
  app.footer(kOutputHelp);
  app.require_subcommand(1, 1);
  RunConfig cfg;
  std::string format = "csv";

  auto data = [&](CLI::App* c) { c->add_option("--data", cfg.data, "Dataset directory"); };
  auto outp = [&](CLI::App* c, const char* what) { c->add_option("--out", cfg.out, what); };
  auto fmt = [&](CLI::App* c) {
    c->add_option("--format", format, "csv or json-lines")
        ->check(CLI::IsMember({"csv", "json-lines"}));
  };
  auto season = [&](CLI::App* c) { c->add_option("--season", cfg.season, "Season (yyyy)"); };
  auto week = [&](CLI::App* c) { c->add_option("--week", cfg.week, "Week number"); };
  auto seed = [&](CLI::App* c) {
    c->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  };
  auto threads = [&](CLI::App* c) {
    c->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto engine = [&](CLI::App* c) {
    c->add_option("--start-week", cfg.start_week, "First predicted week")->capture_default_str();
    c->add_option("--bootstrap", cfg.bootstrap, "Bootstrap resamples B")->capture_default_str();
    c->add_option("--recency-k", cfg.recency_k, "Recency window k")->capture_default_str();
    c->add_option("--recency-mult", cfg.recency_mult, "Recency weight multiplier")
        ->capture_default_str();
    c->add_option("--corr-threshold", cfg.corr_threshold, "Correlation block threshold")
        ->capture_default_str();
    c->add_option("--alpha", cfg.alpha, "Significance level")->capture_default_str();
    c->add_flag("--compat-x21", cfg.compat_x21,
                "Pair every home resample with away resample 1 (printed rule)");
  };

  auto* v = app.add_subcommand("validate", "Check a dataset directory");
  data(v), outp(v, "Output file"), fmt(v);
  auto* pat = app.add_subcommand("pat", "Point-after-touchdown analysis");
  data(pat), outp(pat, "Output directory"), season(pat), fmt(pat);
  auto* fd = app.add_subcommand("fourth-down", "Fourth-down curves and decision chart");
  data(fd), outp(fd, "Output directory"), season(fd), fmt(fd);
  fd->add_option("--bin-width", cfg.bin_width, "Field-position bin width (yards)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  auto* rk = app.add_subcommand("rank", "Weekly SportsNetRank snapshots");
  data(rk), outp(rk, "Output file"), season(rk), week(rk), fmt(rk);
  auto* fit = app.add_subcommand("fit", "Fit the win model and game-day statistics");
  data(fit), outp(fit, "Output directory"), fmt(fit);
  auto* cv = app.add_subcommand("cv", "10-fold cross-validation of the win model");
  data(cv), outp(cv, "Output file"), seed(cv), threads(cv), fmt(cv);
  auto* pr = app.add_subcommand("predict", "Predict the games of one week");
  data(pr), outp(pr, "Output file"), season(pr), week(pr), engine(pr), seed(pr), threads(pr),
      fmt(pr);
  pr->add_flag("--force", cfg.force, "Allow weeks before --start-week");
  auto* ev = app.add_subcommand("evaluate", "Leave-one-season-out backtest");
  data(ev), outp(ev, "Output directory"), engine(ev), seed(ev), threads(ev), fmt(ev);
  auto* sy = app.add_subcommand("synth", "Write synthetic seasons in canonical format");
  outp(sy, "Output directory"), season(sy), seed(sy);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }
  cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::JsonLines;

  try {
    if (v->parsed()) return cmd_validate(cfg, out, err);
    if (pat->parsed()) return cmd_pat(cfg, out, err);
    if (fd->parsed()) return cmd_fourth_down(cfg, out, err);
    if (rk->parsed()) return cmd_rank(cfg, out, err);
    if (fit->parsed()) return cmd_fit(cfg, out, err);
    if (cv->parsed()) return cmd_cv(cfg, out, err);
    if (pr->parsed()) return cmd_predict(cfg, out, err);
    if (ev->parsed()) return cmd_evaluate(cfg, out, err);
    if (sy->parsed()) return cmd_synth(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    bool usage = e.code() == ErrorCode::BadParams || e.code() == ErrorCode::DegenerateSampleSize;
    return usage ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace gridiron::cli
