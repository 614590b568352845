#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gridiron/error.hpp"
#include "gridiron/stats/distributions.hpp"

namespace gridiron::stats {

enum class TestMethod { PairedT, TwoProportionZ, KSTwoSample, OneSampleT };

constexpr std::string_view to_string(TestMethod m) {
  switch (m) {
    case TestMethod::PairedT: return "paired_t";
    case TestMethod::TwoProportionZ: return "two_proportion_z";
    case TestMethod::KSTwoSample: return "ks_two_sample";
    case TestMethod::OneSampleT: return "one_sample_t";
  }
  return "unknown";
}

enum class Alternative { TwoSided, Greater, Less };

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::optional<double> df;
  TestMethod method = TestMethod::OneSampleT;
  double estimate = 0.0;  // mean difference, proportion difference, or D
};

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n - 1)
};

inline MeanSd mean_sd(std::span<const double> x) {
  MeanSd r;
  if (x.empty()) return r;
  // Two-pass for accuracy on large offsets (possession seconds, yards).
  double s = 0.0;
  for (double v : x) s += v;
  r.mean = s / static_cast<double>(x.size());
  if (x.size() < 2) return r;
  double ss = 0.0;
  for (double v : x) ss += (v - r.mean) * (v - r.mean);
  r.sd = std::sqrt(ss / static_cast<double>(x.size() - 1));
  return r;
}

inline TestResult one_sample_t_test(std::span<const double> x, double mu0 = 0.0,
                                    Alternative alt = Alternative::TwoSided) {
  if (x.size() < 2)
    throw Error(ErrorCode::TooFewRows, "t-test needs at least 2 observations");
  auto [mean, sd] = mean_sd(x);
  if (!(sd > 0.0)) throw Error(ErrorCode::ZeroVariance, "all observations equal");
  double n = static_cast<double>(x.size());
  double df = n - 1.0;
  double t = (mean - mu0) / (sd / std::sqrt(n));
  double p = 1.0;
  switch (alt) {
    case Alternative::TwoSided: p = t_two_sided_p(t, df); break;
    case Alternative::Greater: p = t_upper_tail(t, df); break;
    case Alternative::Less: p = t_cdf(t, df); break;
  }
  return {t, std::clamp(p, 0.0, 1.0), df, TestMethod::OneSampleT, mean - mu0};
}

// Two-sided t-test on mean(x - y).
inline TestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorCode::LengthMismatch, "paired samples differ in length");
  if (x.size() < 2)
    throw Error(ErrorCode::TooFewRows, "paired t-test needs at least 2 pairs");
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  auto r = one_sample_t_test(d, 0.0, Alternative::TwoSided);
  r.method = TestMethod::PairedT;
  return r;
}

// Pooled two-sided z-test for p1 = p2, optionally with Yates continuity
// correction.
inline TestResult two_proportion_test(long long k1, long long n1, long long k2,
                                      long long n2,
                                      bool continuity_correction = false) {
  if (n1 < 1 || n2 < 1 || k1 < 0 || k2 < 0 || k1 > n1 || k2 > n2)
    throw Error(ErrorCode::InvalidCounts, "need 0 <= k <= n and n >= 1");
  double p1 = static_cast<double>(k1) / n1;
  double p2 = static_cast<double>(k2) / n2;
  double pooled = static_cast<double>(k1 + k2) / static_cast<double>(n1 + n2);
  double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
  double diff = p1 - p2;
  if (!(se > 0.0)) return {0.0, 1.0, std::nullopt, TestMethod::TwoProportionZ, diff};
  double num = diff;
  if (continuity_correction) {
    double cc = 0.5 * (1.0 / n1 + 1.0 / n2);
    num = std::copysign(std::max(0.0, std::abs(diff) - cc), diff);
  }
  double z = num / se;
  return {z, normal_two_sided_p(z), std::nullopt, TestMethod::TwoProportionZ, diff};
}

// Right-continuous empirical CDF.
class Ecdf {
 public:
  explicit Ecdf(std::span<const double> x) : sorted_(x.begin(), x.end()) {
    if (sorted_.empty()) throw Error(ErrorCode::EmptySample, "ECDF of empty sample");
    std::sort(sorted_.begin(), sorted_.end());
  }

  double operator()(double q) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), q);
    return static_cast<double>(it - sorted_.begin()) /
           static_cast<double>(sorted_.size());
  }

  const std::vector<double>& support() const { return sorted_; }
  std::size_t size() const { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

inline Ecdf ecdf(std::span<const double> x) { return Ecdf(x); }

// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value (Stephens'
// small-sample adjustment of the scaling factor).
inline TestResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty())
    throw Error(ErrorCode::EmptySample, "KS test needs two non-empty samples");
  std::vector<double> a(x.begin(), x.end()), b(y.begin(), y.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  double en = std::sqrt(na * nb / (na + nb));
  double p = kolmogorov_survival((en + 0.12 + 0.11 / en) * d);
  return {d, p, std::nullopt, TestMethod::KSTwoSample, d};
}

}  // namespace gridiron::stats
