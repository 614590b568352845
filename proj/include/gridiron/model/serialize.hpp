#pragma once

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <filesystem>
#include <limits>
#include <sstream>
#include <string>

#include "gridiron/error.hpp"
#include "gridiron/model/bt_model.hpp"

namespace gridiron::model {

inline constexpr std::string_view kModelFormat = "gridiron.bt_model/1";

namespace detail {

// NaN (no inference attached) is written as null.
inline nlohmann::json num(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

inline double get_num(const nlohmann::json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::MalformedRow, "model file lacks key " + key);
  if (it->is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!it->is_number()) throw Error(ErrorCode::MalformedRow, "key " + key + " is not a number");
  return it->get<double>();
}

}  // namespace detail

// Flat key/value JSON. nlohmann prints doubles with 17 significant digits, so
// a round trip is exact.
inline std::string model_to_json(const FittedBTModel& m) {
  if (!m.fitted) throw Error(ErrorCode::UnfittedModel, "cannot serialize an unfitted model");
  nlohmann::ordered_json j;
  j["format"] = kModelFormat;
  j["n_obs"] = m.n_obs;
  j["log_likelihood"] = detail::num(m.log_likelihood);
  j["iterations"] = m.iterations;
  j["ridge"] = m.ridge;
  j["standardized"] = m.standardization.has_value();
  for (std::size_t k = 0; k < kNumCoefficients; ++k) {
    std::string name(kCoefficientNames[k]);
    j["coef." + name] = m.coef[k];
    j["se." + name] = detail::num(m.se[k]);
    j["p." + name] = detail::num(m.p_value[k]);
  }
  if (m.standardization)
    for (std::size_t k = 0; k < kNumFeatures; ++k) {
      std::string name(kFeatureNames[k]);
      j["mean." + name] = m.standardization->mean[k];
      j["sd." + name] = m.standardization->sd[k];
    }
  return j.dump(2) + "\n";
}

inline FittedBTModel model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRow, std::string("model file: ") + e.what());
  }
  if (!j.is_object() || j.value("format", std::string{}) != kModelFormat)
    throw Error(ErrorCode::MalformedRow, "not a model file");
  FittedBTModel m;
  m.fitted = true;
  m.n_obs = j.value("n_obs", std::size_t{0});
  m.log_likelihood = detail::get_num(j, "log_likelihood");
  m.iterations = j.value("iterations", 0);
  m.ridge = j.value("ridge", 0.0);
  for (std::size_t k = 0; k < kNumCoefficients; ++k) {
    std::string name(kCoefficientNames[k]);
    m.coef[k] = detail::get_num(j, "coef." + name);
    m.se[k] = detail::get_num(j, "se." + name);
    m.p_value[k] = detail::get_num(j, "p." + name);
  }
  if (j.value("standardized", false)) {
    Standardization s;
    for (std::size_t k = 0; k < kNumFeatures; ++k) {
      std::string name(kFeatureNames[k]);
      s.mean[k] = detail::get_num(j, "mean." + name);
      s.sd[k] = detail::get_num(j, "sd." + name);
    }
    m.standardization = s;
  }
  return m;
}

inline void save_model(const std::filesystem::path& path, const FittedBTModel& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << model_to_json(m);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

inline FittedBTModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace gridiron::model
