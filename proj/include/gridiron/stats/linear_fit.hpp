#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "gridiron/error.hpp"
#include "gridiron/stats/distributions.hpp"

namespace gridiron::stats {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_ci_low = 0.0;
  double slope_ci_high = 0.0;
  double slope_se = 0.0;
  double slope_p_value = 1.0;  // H0: slope = 0
  std::size_t n = 0;
};

// Ordinary least squares y = intercept + slope * x with a 95% t interval on
// the slope.
inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "x and y differ in length");
  if (x.size() < 3) throw Error(ErrorCode::TooFewRows, "linear fit needs at least 3 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::ConstantX, "x is constant");

  LinearFit f;
  f.n = x.size();
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (f.intercept + f.slope * x[i]);
    sse += r * r;
  }
  // A constant y is fitted exactly.
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  double df = n - 2.0;
  f.slope_se = std::sqrt(sse / df / sxx);
  double tq = t_quantile(0.975, df);
  f.slope_ci_low = f.slope - tq * f.slope_se;
  f.slope_ci_high = f.slope + tq * f.slope_se;
  f.slope_p_value = f.slope_se > 0.0 ? t_two_sided_p(f.slope / f.slope_se, df)
                                     : (f.slope == 0.0 ? 1.0 : 0.0);
  return f;
}

}  // namespace gridiron::stats
