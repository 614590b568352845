#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridiron/error.hpp"
#include "gridiron/model/features.hpp"
#include "gridiron/stats/distributions.hpp"

namespace gridiron::model {

using Coefficients = std::array<double, kNumCoefficients>;

// The published coefficient table, in kCoefficientNames order.
inline constexpr Coefficients kPublishedCoefficients = {0.22, 0.01, -0.02, -1.05, 0.0001, -3.18, 0.04};

inline double logistic(double eta) {
  if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
  double e = std::exp(eta);
  return e / (1.0 + e);
}

// log(1 + exp(eta)) without overflow.
inline double log1pexp(double eta) {
  return eta > 0.0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta));
}

struct Standardization {
  FeatureVector mean{};
  FeatureVector sd{};

  FeatureVector apply(const FeatureVector& x) const {
    FeatureVector z{};
    for (std::size_t j = 0; j < kNumFeatures; ++j) z[j] = (x[j] - mean[j]) / sd[j];
    return z;
  }
};

struct FittedBTModel {
  bool fitted = false;
  Coefficients coef{};
  Coefficients se{};
  Coefficients p_value{};
  // Present when coef is on the z-score scale; predict applies it to raw input.
  std::optional<Standardization> standardization;
  std::size_t n_obs = 0;
  double log_likelihood = 0.0;
  int iterations = 0;
  double ridge = 0.0;
  std::vector<double> loglik_trace;  // one entry per accepted IRLS step, starting at beta = 0

  // A model with fixed coefficients and no inference attached.
  static FittedBTModel from_coefficients(const Coefficients& c) {
    FittedBTModel m;
    m.fitted = true;
    m.coef = c;
    m.se.fill(std::numeric_limits<double>::quiet_NaN());
    m.p_value.fill(std::numeric_limits<double>::quiet_NaN());
    return m;
  }

  double linear_predictor(const FeatureVector& raw) const {
    FeatureVector x = standardization ? standardization->apply(raw) : raw;
    double eta = coef[0];
    for (std::size_t j = 0; j < kNumFeatures; ++j) eta += coef[j + 1] * x[j];
    return eta;
  }

  // Coefficients expressed on raw feature units.
  Coefficients raw_coefficients() const {
    if (!standardization) return coef;
    Coefficients out{};
    out[0] = coef[0];
    for (std::size_t j = 0; j < kNumFeatures; ++j) {
      out[j + 1] = coef[j + 1] / standardization->sd[j];
      out[0] -= out[j + 1] * standardization->mean[j];
    }
    return out;
  }
};

inline double predict_prob(const FittedBTModel& m, const FeatureVector& x) {
  if (!m.fitted) throw Error(ErrorCode::UnfittedModel, "model has not been fitted");
  return logistic(m.linear_predictor(x));
}

inline double predict_prob(const FittedBTModel& m, const FeatureDiff& row) {
  return predict_prob(m, row.x);
}

inline double linear_predictor(const Coefficients& b, const FeatureVector& x) {
  double eta = b[0];
  for (std::size_t j = 0; j < kNumFeatures; ++j) eta += b[j + 1] * x[j];
  return eta;
}

inline double log_likelihood(const Coefficients& b, std::span<const FeatureDiff> rows) {
  double ll = 0.0;
  for (const auto& r : rows) {
    double eta = linear_predictor(b, r.x);
    ll += r.label * eta - log1pexp(eta);
  }
  return ll;
}

inline Coefficients loglik_gradient(const Coefficients& b, std::span<const FeatureDiff> rows) {
  Coefficients g{};
  for (const auto& r : rows) {
    double resid = r.label - logistic(linear_predictor(b, r.x));
    g[0] += resid;
    for (std::size_t j = 0; j < kNumFeatures; ++j) g[j + 1] += resid * r.x[j];
  }
  return g;
}

struct FitOptions {
  // L2 penalty on the unit-scaled slopes; 0 gives the plain MLE.
  double ridge = 0.0;
  int max_iter = 100;
  double rel_tol = 1e-10;
  // The relative log-likelihood test alone stops one Newton step early;
  // also require a small gradient so the optimum is actually reached.
  double grad_tol = 1e-8;
  std::size_t min_rows = 50;
};

namespace detail {

inline double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace detail

inline FittedBTModel fit(std::span<const FeatureDiff> rows, const FitOptions& opts = {}) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  constexpr Eigen::Index p = kNumCoefficients;
  if (rows.size() < opts.min_rows)
    throw Error(ErrorCode::TooFewRows, "fit needs at least " + std::to_string(opts.min_rows) +
                                           " rows, got " + std::to_string(rows.size()));

  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    X(i, 0) = 1.0;
    for (std::size_t j = 0; j < kNumFeatures; ++j) {
      if (!std::isfinite(r.x[j]))
        throw Error(ErrorCode::InvalidCounts, "non-finite feature in " + r.game_id);
      X(i, static_cast<Eigen::Index>(j) + 1) = r.x[j];
    }
    y(i) = r.label;
  }
  for (Eigen::Index j = 1; j < p; ++j)
    if (X.col(j).maxCoeff() == X.col(j).minCoeff())
      throw Error(ErrorCode::Collinearity,
                  "feature " + std::string(kCoefficientNames[static_cast<std::size_t>(j)]) +
                      " is constant");

  // Column scaling (no centering) keeps the information matrix well conditioned
  // and is undone exactly afterwards.
  Eigen::VectorXd scale(p);
  for (Eigen::Index j = 0; j < p; ++j) scale(j) = std::sqrt(X.col(j).squaredNorm() / n);
  Eigen::MatrixXd Xs = X * scale.cwiseInverse().asDiagonal();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xs);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) throw Error(ErrorCode::Collinearity, "design matrix is rank deficient");

  if (opts.ridge == 0.0 && (y.sum() == 0.0 || y.sum() == static_cast<double>(n)))
    throw Error(ErrorCode::Separation, "all labels are equal");

  Eigen::VectorXd penalty = Eigen::VectorXd::Constant(p, opts.ridge);
  penalty(0) = 0.0;

  auto objective = [&](const Eigen::VectorXd& b) {
    Eigen::VectorXd eta = Xs * b;
    double ll = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) ll += y(i) * eta(i) - log1pexp(eta(i));
    return ll - 0.5 * (penalty.array() * b.array().square()).sum();
  };

  FittedBTModel m;
  m.ridge = opts.ridge;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  double ll = objective(beta);
  m.loglik_trace.push_back(ll);
  bool converged = false;
  Eigen::VectorXd mu(n), w(n);
  auto info_matrix = [&](const Eigen::VectorXd& b) {
    Eigen::VectorXd eta = Xs * b;
    for (Eigen::Index i = 0; i < n; ++i) {
      mu(i) = logistic(eta(i));
      w(i) = mu(i) * (1.0 - mu(i));
    }
    Eigen::MatrixXd H = Xs.transpose() * w.asDiagonal() * Xs;
    H.diagonal() += penalty;
    return H;
  };

  for (int it = 1; it <= opts.max_iter; ++it) {
    Eigen::MatrixXd H = info_matrix(beta);
    Eigen::VectorXd grad = Xs.transpose() * (y - mu) - penalty.cwiseProduct(beta);
    if (opts.ridge == 0.0 && ((y - mu).cwiseAbs().maxCoeff() < 1e-9))
      throw Error(ErrorCode::Separation, "data are perfectly separable");
    Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
    if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() <= 0.0).any())
      throw Error(ErrorCode::Collinearity, "information matrix is singular");
    Eigen::VectorXd step = ldlt.solve(grad);

    double t = 1.0;
    Eigen::VectorXd next;
    double ll_next = -std::numeric_limits<double>::infinity();
    // Near the optimum the gain of a Newton step is below the rounding noise
    // of the summed objective, so a full step may look like a tiny loss.
    const double noise = 1e-13 * (std::abs(ll) + 1.0);
    for (int h = 0; h < 40; ++h, t *= 0.5) {
      next = beta + t * step;
      ll_next = objective(next);
      if (ll_next >= ll - noise) break;
    }
    m.iterations = it;
    if (!(ll_next >= ll - noise)) {
      // No step improves the likelihood: we are at the numerical optimum.
      converged = detail::max_abs(grad.cwiseProduct(scale)) < std::max(opts.grad_tol, 1e-6);
      break;
    }
    double rel = std::abs(ll_next - ll) / std::max(std::abs(ll), 1e-300);
    beta = next;
    ll = ll_next;
    m.loglik_trace.push_back(ll);
    info_matrix(beta);
    Eigen::VectorXd g_raw =
        (Xs.transpose() * (y - mu) - penalty.cwiseProduct(beta)).cwiseProduct(scale);
    if (rel < opts.rel_tol && detail::max_abs(g_raw) < opts.grad_tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    if (opts.ridge == 0.0 && detail::max_abs(Xs * beta) > 30.0)
      throw Error(ErrorCode::Separation, "coefficients diverge (quasi-separation)");
    throw Error(ErrorCode::NonConvergence,
                "IRLS did not converge in " + std::to_string(opts.max_iter) + " iterations");
  }

  Eigen::MatrixXd H = info_matrix(beta);
  Eigen::MatrixXd cov = H.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
  m.fitted = true;
  m.n_obs = rows.size();
  m.log_likelihood = objective(beta) + 0.5 * (penalty.array() * beta.array().square()).sum();
  for (Eigen::Index j = 0; j < p; ++j) {
    auto k = static_cast<std::size_t>(j);
    m.coef[k] = beta(j) / scale(j);
    m.se[k] = std::sqrt(cov(j, j)) / scale(j);
    double z = m.se[k] > 0.0 ? m.coef[k] / m.se[k] : 0.0;
    m.p_value[k] = std::clamp(stats::normal_two_sided_p(z), 0.0, 1.0);
  }
  return m;
}

// Column means and sample standard deviations of the features.
inline Standardization compute_standardization(std::span<const FeatureDiff> rows) {
  if (rows.size() < 2) throw Error(ErrorCode::TooFewRows, "standardization needs 2 rows");
  Standardization s;
  const double n = static_cast<double>(rows.size());
  for (std::size_t j = 0; j < kNumFeatures; ++j) {
    double mean = 0.0;
    for (const auto& r : rows) mean += r.x[j];
    mean /= n;
    double ss = 0.0;
    for (const auto& r : rows) ss += (r.x[j] - mean) * (r.x[j] - mean);
    double sd = std::sqrt(ss / (n - 1.0));
    if (!(sd > 0.0))
      throw Error(ErrorCode::Collinearity,
                  "feature " + std::string(kFeatureNames[j]) + " is constant");
    s.mean[j] = mean;
    s.sd[j] = sd;
  }
  return s;
}

inline std::vector<FeatureDiff> apply_standardization(std::span<const FeatureDiff> rows,
                                                      const Standardization& s) {
  std::vector<FeatureDiff> out(rows.begin(), rows.end());
  for (auto& r : out) r.x = s.apply(r.x);
  return out;
}

inline FittedBTModel standardize_fit(std::span<const FeatureDiff> rows,
                                     const FitOptions& opts = {}) {
  if (rows.size() < opts.min_rows)
    throw Error(ErrorCode::TooFewRows, "fit needs at least " + std::to_string(opts.min_rows) +
                                           " rows, got " + std::to_string(rows.size()));
  auto s = compute_standardization(rows);
  auto z = apply_standardization(rows, s);
  auto m = fit(z, opts);
  m.standardization = s;
  return m;
}

}  // namespace gridiron::model
