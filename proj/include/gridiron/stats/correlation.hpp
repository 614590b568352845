#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "gridiron/error.hpp"
#include "gridiron/stats/distributions.hpp"

namespace gridiron::stats {

struct NamedColumn {
  std::string label;
  std::vector<double> values;
};

struct CorrMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rho;
  std::vector<std::vector<double>> p;

  std::size_t size() const { return labels.size(); }
};

inline double pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Two-sided p-value of H0: rho = 0 via t = r sqrt((n-2)/(1-r^2)).
inline double pearson_p_value(double r, std::size_t n) {
  if (std::abs(r) >= 1.0) return 0.0;
  double df = static_cast<double>(n) - 2.0;
  double t = r * std::sqrt(df / (1.0 - r * r));
  return t_two_sided_p(t, df);
}

inline CorrMatrix pearson_matrix(std::span<const NamedColumn> columns) {
  const std::size_t k = columns.size();
  if (k == 0) throw Error(ErrorCode::TooFewRows, "no columns");
  const std::size_t n = columns[0].values.size();
  for (const auto& c : columns)
    if (c.values.size() != n)
      throw Error(ErrorCode::LengthMismatch, "column " + c.label + " length differs");
  if (n < 3) throw Error(ErrorCode::TooFewRows, "correlation needs at least 3 rows");
  for (const auto& c : columns) {
    auto [lo, hi] = std::minmax_element(c.values.begin(), c.values.end());
    if (*lo == *hi) throw Error(ErrorCode::ConstantColumn, "column " + c.label + " is constant");
  }
  CorrMatrix m;
  m.rho.assign(k, std::vector<double>(k, 1.0));
  m.p.assign(k, std::vector<double>(k, 0.0));
  for (const auto& c : columns) m.labels.push_back(c.label);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      double r = pearson(columns[i].values, columns[j].values);
      double p = pearson_p_value(r, n);
      m.rho[i][j] = m.rho[j][i] = r;
      m.p[i][j] = m.p[j][i] = p;
    }
  return m;
}

}  // namespace gridiron::stats
