// Acceptance checks: one PASS/FAIL/SKIP line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gridiron/core/validate.hpp"
#include "gridiron/decision/fourth_down.hpp"
#include "gridiron/decision/pat.hpp"
#include "gridiron/fpm/evaluate.hpp"
#include "gridiron/fpm/synth.hpp"
#include "gridiron/model/bt_model.hpp"
#include "gridiron/model/cross_validate.hpp"
#include "gridiron/model/features.hpp"
#include "gridiron/ranking/sportsnetrank.hpp"
#include "gridiron/report/tables.hpp"
#include "gridiron/stats/tests.hpp"

using namespace gridiron;

namespace {

struct Outcome {
  enum Kind { Pass, Fail, Skip } kind;
  std::string detail;
};

Outcome check(bool ok, std::string detail) { return {ok ? Outcome::Pass : Outcome::Fail, detail}; }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int failures = 0;

void criterion(const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {Outcome::Fail, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.kind != Outcome::Skip && s > budget_s) {
    o.kind = Outcome::Fail;
    o.detail += fmt("; over budget %.0f s", budget_s);
  }
  const char* tag = o.kind == Outcome::Pass ? "PASS" : o.kind == Outcome::Fail ? "FAIL" : "SKIP";
  failures += o.kind == Outcome::Fail;
  std::printf("%s %-22s %s [%.2f s]\n", tag, name.c_str(), o.detail.c_str(), s);
  std::fflush(stdout);
}

double brute_force_ks(const std::vector<double>& x, const std::vector<double>& y) {
  auto cdf = [](const std::vector<double>& s, double q) {
    return static_cast<double>(std::count_if(s.begin(), s.end(), [&](double v) { return v <= q; })) /
           static_cast<double>(s.size());
  };
  double d = 0.0;
  for (const auto* s : {&x, &y})
    for (double q : *s) d = std::max(d, std::abs(cdf(x, q) - cdf(y, q)));
  return d;
}

GameRecord simple_game(std::string id, int week, std::string home, std::string away, int hs,
                       int as) {
  GameRecord g;
  g.game_id = std::move(id);
  g.season = 2015;
  g.week = week;
  g.home_team = std::move(home);
  g.away_team = std::move(away);
  g.home_score = hs;
  g.away_score = as;
  return g;
}

std::string render_all(const fpm::EvaluationReport& rep, const SeasonDataset& ds) {
  std::ostringstream s;
  for (const auto& t : {report::evaluation_season_table(rep), report::evaluation_predictions_table(rep),
                        report::evaluation_weekly_table(rep), report::calibration_table(rep),
                        report::evaluation_fit_table(rep),
                        report::leakage_table(fpm::audit_leakage(ds, rep))})
    render(s, t, OutputFormat::Csv);
  return s.str();
}

double baseline_accuracy(const SeasonDataset& ds) {
  int n = 0, right = 0;
  for (const auto& g : ds.games()) {
    if (g.is_postseason || g.is_tie()) continue;
    auto st = fpm::standings(ds.games(), {g.season, g.week});
    if (st.latest_week_used == 0) continue;  // same games the model can see
    ++n;
    right += fpm::baseline_predict(st, g) == fpm::actual_outcome(g);
  }
  return n ? static_cast<double>(right) / n : 0.0;
}

}  // namespace

int main() {
  criterion("pat_fixture", 1, [] {
    const double s2 = 235.0 / 460.0, sk = 8425.0 / 8561.0;
    double v = decision::pat_expected_benefit(s2, sk);
    double closed = 2.0 * s2 - sk;
    return check(std::abs(v - closed) <= 1e-12 && std::abs(v - 0.03762) < 1e-5,
                 fmt("benefit %.8f, closed form %.8f", v, closed));
  });

  criterion("gamma_fixture", 1, [] {
    double g = decision::gamma(20, 29);
    return check(std::abs(g - 80.0 / 29.0) <= 1e-9 && std::abs(g - 2.7586) < 5e-5,
                 fmt("gamma(20, 29) = %.10f", g));
  });

  criterion("expected_points", 1, [] {
    auto plus = decision::mean_field_benefit(0.779, decision::gamma(50, 29), 0.0, 0.0, 0.0);
    auto minus = decision::mean_field_benefit(0.0, 1.0, 0.855, 0.07, 0.07);
    bool ok = std::abs(plus.e_plus - 3.9008) <= 1e-4 && std::abs(minus.e_minus - 3.195) <= 1e-9;
    return check(ok, fmt("E+ %.6f, E- %.12f", plus.e_plus, minus.e_minus));
  });

  criterion("intercept_fixture", 1, [] {
    auto m = model::FittedBTModel::from_coefficients(model::kPublishedCoefficients);
    double p = model::predict_prob(m, model::FeatureVector{});
    return check(std::abs(p - 0.5548) <= 5e-4 && std::abs(p - 0.555) <= 5e-4,
                 fmt("p(zero features) = %.6f", p));
  });

  criterion("fit_recovery", 30, [] {
    fpm::SynthParams sp;
    sp.n_seasons = 37;  // 37 x 272 = 10,064 games
    sp.seed = 101;
    auto ds = fpm::synthesize_seasons(sp);
    auto rows = model::build_features(ds, ranking::build_rank_book(ds.games())).rows;
    auto m = model::fit(rows);
    double worst_z = 0.0;
    for (std::size_t j = 0; j < model::kNumCoefficients; ++j)
      worst_z = std::max(worst_z, std::abs(m.coef[j] - model::kPublishedCoefficients[j]) / m.se[j]);
    double grad = 0.0;
    for (double g : model::loglik_gradient(m.coef, rows)) grad = std::max(grad, std::abs(g));

    // Central differences away from the optimum, where the gradient is not
    // zero and a relative error means something: the truth plus five random
    // offsets. Steps are sized to each column so eta moves by about 1e-4.
    model::Coefficients step{};
    step[0] = 1e-4;
    for (std::size_t j = 0; j < model::kNumFeatures; ++j) {
      double ss = 0.0;
      for (const auto& r : rows) ss += r.x[j] * r.x[j];
      step[j + 1] = 1e-4 / std::sqrt(ss / rows.size());
    }
    std::vector<model::Coefficients> points = {model::kPublishedCoefficients};
    std::mt19937_64 rng(102);
    std::normal_distribution<double> n01;
    for (int k = 0; k < 5; ++k) {
      auto b = model::kPublishedCoefficients;
      for (std::size_t j = 0; j < model::kNumCoefficients; ++j) b[j] += 100.0 * step[j] * n01(rng);
      points.push_back(b);
    }
    double fd_err = 0.0;
    for (const auto& b : points) {
      auto an = model::loglik_gradient(b, rows);
      for (std::size_t j = 0; j < model::kNumCoefficients; ++j) {
        double h = step[j];
        auto up = b, dn = b;
        up[j] += h;
        dn[j] -= h;
        double fd = (model::log_likelihood(up, rows) - model::log_likelihood(dn, rows)) / (2 * h);
        fd_err = std::max(fd_err, std::abs(fd - an[j]) / std::max(1.0, std::abs(an[j])));
      }
    }
    bool ok = worst_z < 3.0 && grad < 1e-6 && fd_err < 1e-4;
    return check(ok, fmt("%.0f games, %.0f rows, max |b-truth|/se %.3f", double(ds.games().size()),
                         double(rows.size()), worst_z) +
                         fmt(", grad %.2e", grad) +
                         fmt(", fd rel err %.2e", fd_err));
  });

  criterion("cv_sanity", 60, [] {
    fpm::SynthParams sp;
    sp.seed = 202;
    auto ds = fpm::synthesize_seasons(sp);
    auto rows = model::build_features(ds, ranking::build_rank_book(ds.games())).rows;
    auto cv = model::cross_validate(rows, 10, 5);
    double base = baseline_accuracy(ds);

    std::mt19937_64 g(303);
    std::bernoulli_distribution coin(0.5);
    auto noise = rows;
    for (auto& r : noise) r.label = coin(g) ? 1 : 0;
    auto cvn = model::cross_validate(noise, 10, 5);
    bool ok = cv.mean - base >= 0.05 && cvn.mean >= 0.45 && cvn.mean <= 0.55;
    return check(ok, fmt("cv %.4f vs baseline %.4f, noise %.4f", cv.mean, base, cvn.mean));
  });

  criterion("calibration", 300, [] {
    fpm::SynthParams sp;
    sp.n_seasons = 20;
    sp.seed = 404;
    auto ds = fpm::synthesize_seasons(sp);
    fpm::EvalConfig ec;
    ec.boot.B = 200;
    auto rep = fpm::evaluate(ds, ec);
    if (!rep.calibration_fit) return check(false, "too few populated buckets to fit");
    const auto& f = *rep.calibration_fit;
    return check(f.slope_ci_low <= 1.0 && f.slope_ci_high >= 1.0,
                 fmt("slope %.3f, CI [%.3f, %.3f]", f.slope, f.slope_ci_low, f.slope_ci_high) +
                     fmt(", %.0f games, accuracy %.3f", rep.total_games(), rep.accuracy()));
  });

  criterion("determinism", 120, [] {
    fpm::SynthParams sp;
    sp.n_seasons = 4;
    sp.seed = 505;
    auto ds = fpm::synthesize_seasons(sp);
    fpm::EvalConfig ec;
    ec.boot.B = 200;
    ec.threads = 1;
    auto a = render_all(fpm::evaluate(ds, ec), ds);
    auto b = render_all(fpm::evaluate(ds, ec), ds);
    ec.threads = 8;
    auto c = render_all(fpm::evaluate(ds, ec), ds);
    return check(a == b && a == c, fmt("%.0f bytes per run; repeat ",
                                       double(a.size())) +
                                       (a == b ? "identical" : "differ") + ", threads 1 vs 8 " +
                                       (a == c ? "identical" : "differ"));
  });

  criterion("leakage_audit", 60, [] {
    fpm::SynthParams sp;
    sp.n_seasons = 3;
    sp.seed = 606;
    auto ds = fpm::synthesize_seasons(sp);
    fpm::EvalConfig ec;
    ec.boot.B = 100;
    auto rep = fpm::evaluate(ds, ec);
    auto v = fpm::audit_leakage(ds, rep);
    return check(v.empty() && rep.total_games() > 0,
                 fmt("%.0f predictions audited, %.0f violations", rep.total_games(), double(v.size())));
  });

  criterion("stats_oracles", 30, [] {
    std::mt19937_64 g(707);
    std::uniform_int_distribution<int> size(1, 10), val(0, 6);
    double ks_err = 0.0;
    for (int k = 0; k < 1000; ++k) {
      std::vector<double> x(size(g)), y(size(g));
      for (auto& v : x) v = val(g);
      for (auto& v : y) v = val(g);
      ks_err = std::max(ks_err, std::abs(stats::ks_two_sample(x, y).statistic - brute_force_ks(x, y)));
    }

    // Paired t on differences {1, 2, 3}: t = 2 sqrt(3), df 2.
    std::vector<double> px = {2, 4, 6}, py = {1, 2, 3};
    auto pt = stats::paired_t_test(px, py);
    const double t = 2.0 * std::sqrt(3.0);
    double pt_err = std::max(std::abs(pt.statistic - t),
                             std::abs(pt.p_value - (1.0 - t / std::sqrt(2.0 + t * t))));

    auto tp = stats::two_proportion_test(90, 100, 80, 100);
    const double pooled = 0.85, z = 0.1 / std::sqrt(pooled * (1 - pooled) * 0.02);
    double tp_err = std::max(std::abs(tp.statistic - z),
                             std::abs(tp.p_value - std::erfc(z / std::sqrt(2.0))));

    // A beat B, B beat C: hand-solved stationary vector.
    std::vector<GameRecord> chain = {simple_game("g1", 1, "A", "B", 20, 10),
                                     simple_game("g2", 2, "B", "C", 14, 7)};
    auto rt = ranking::sportsnetrank(ranking::build_win_graph(chain, {2015, 3}));
    const double d = 0.85, kk = 1.0 + d + d * d, b = ((1.0 - d) / 3.0) / (1.0 - d * kk / 3.0);
    double pr_err = std::max({std::abs(rt.score_of("C") - b), std::abs(rt.score_of("B") - b * (1 + d)),
                              std::abs(rt.score_of("A") - b * kk)});

    double sum_err = 0.0;
    std::uniform_int_distribution<int> score(0, 40);
    for (int rep = 0; rep < 50; ++rep) {
      int n = 3 + rep % 20;
      std::uniform_int_distribution<int> pick(0, n - 1);
      std::vector<GameRecord> games;
      for (int i = 0; i < 3 * n; ++i) {
        int a = pick(g), c = pick(g);
        if (a == c) continue;
        games.push_back(simple_game("r" + std::to_string(i), 1 + i % 5, "T" + std::to_string(a),
                                    "T" + std::to_string(c), score(g), score(g)));
      }
      if (games.empty()) continue;
      auto s = ranking::sportsnetrank(ranking::build_win_graph(games, {2015, 6})).score;
      sum_err = std::max(sum_err, std::abs(std::accumulate(s.begin(), s.end(), 0.0) - 1.0));
    }
    bool ok = ks_err == 0.0 && pt_err <= 1e-6 && tp_err <= 1e-6 && pr_err <= 1e-8 && sum_err <= 1e-9;
    return check(ok, fmt("ks %.1e, paired-t %.1e, two-prop %.1e", ks_err, pt_err, tp_err) +
                         fmt(", pagerank hand %.1e, sum %.1e", pr_err, sum_err));
  });

  criterion("real_data", 1800, [] {
    const char* dir = std::getenv("GRIDIRON_REAL_DATA");
    if (!dir || !*dir) return Outcome{Outcome::Skip, "set GRIDIRON_REAL_DATA to a 2009-2015 dataset"};
    auto ds = load_dataset(dir);
    require_valid(validate_dataset(ds));
    // Per-season engine accuracy from the published table.
    const std::map<int, double> published = {{2009, 0.66}, {2010, 0.60}, {2011, 0.68}, {2012, 0.72},
                                             {2013, 0.55}, {2014, 0.66}, {2015, 0.57}};
    fpm::EvalConfig ec;
    auto rep = fpm::evaluate(ds, ec);
    std::string detail;
    bool ok = true;
    for (const auto& s : rep.seasons) {
      auto it = published.find(s.season);
      if (it == published.end()) continue;
      bool in = std::abs(s.accuracy() - it->second) <= 0.03;
      ok = ok && in;
      detail += fmt("%.0f:%.3f ", s.season, s.accuracy());
    }
    auto rc = decision::pat_rule_change_test(ds);
    double k2015 = 0.0;
    for (const auto& row : rc.seasons)
      if (row.season == 2015 && row.rates.kick.value()) k2015 = *row.rates.kick.value();
    ok = ok && std::abs(k2015 - 0.9416) < 5e-5 && rc.kick_test.p_value < 1e-6;
    return check(ok, detail + fmt("kick 2015 %.4f, p %.2e", k2015, rc.kick_test.p_value));
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
