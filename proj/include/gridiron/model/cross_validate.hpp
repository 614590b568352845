#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "gridiron/model/bt_model.hpp"
#include "gridiron/rng.hpp"

namespace gridiron::model {

struct CvResult {
  int folds = 0;
  std::vector<double> fold_accuracy;
  double mean = 0.0;
  double sd = 0.0;  // sample sd across folds
};

// Fold id per row: each class is shuffled on its own stream and dealt round
// robin, so every fold sees both classes in proportion.
inline std::vector<int> stratified_folds(std::span<const FeatureDiff> rows, int folds,
                                         std::uint64_t seed) {
  std::vector<int> fold(rows.size(), 0);
  int next = 0;
  for (int cls = 0; cls < 2; ++cls) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].label == cls) idx.push_back(i);
    auto g = substream(seed, {fnv1a64("cv-folds"), static_cast<std::uint64_t>(cls)});
    shuffle(idx, g);
    for (auto i : idx) {
      fold[i] = next;
      next = (next + 1) % folds;
    }
  }
  return fold;
}

// Home win predicted when p >= 0.5.
inline bool predicts_home(double p) { return p >= 0.5; }

inline CvResult cross_validate(std::span<const FeatureDiff> rows, int folds = 10,
                               std::uint64_t seed = kDefaultSeed, const FitOptions& opts = {},
                               int threads = 1) {
  if (folds < 2) throw Error(ErrorCode::TooFewRows, "cross validation needs at least 2 folds");
  if (rows.size() < static_cast<std::size_t>(folds))
    throw Error(ErrorCode::TooFewRows, "fewer rows than folds");
  auto fold = stratified_folds(rows, folds, seed);

  CvResult out;
  out.folds = folds;
  out.fold_accuracy.assign(static_cast<std::size_t>(folds), 0.0);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(folds));
  auto run = [&](int f) {
    try {
      std::vector<FeatureDiff> train, test;
      for (std::size_t i = 0; i < rows.size(); ++i)
        (fold[i] == f ? test : train).push_back(rows[i]);
      auto m = fit(train, opts);
      int correct = 0;
      for (const auto& r : test)
        if (predicts_home(predict_prob(m, r)) == (r.label == 1)) ++correct;
      out.fold_accuracy[static_cast<std::size_t>(f)] =
          test.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(test.size());
    } catch (...) {
      errors[static_cast<std::size_t>(f)] = std::current_exception();
    }
  };
  int nt = std::clamp(threads, 1, folds);
  if (nt == 1) {
    for (int f = 0; f < folds; ++f) run(f);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        for (int f = t; f < folds; f += nt) run(f);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  double s = 0.0;
  for (double a : out.fold_accuracy) s += a;
  out.mean = s / folds;
  double ss = 0.0;
  for (double a : out.fold_accuracy) ss += (a - out.mean) * (a - out.mean);
  out.sd = std::sqrt(ss / (folds - 1));
  return out;
}

}  // namespace gridiron::model
