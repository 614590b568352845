#pragma once

#include <json.hpp>

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gridiron/core/csv.hpp"

namespace gridiron {

// A cell keeps its type so json-lines output can tell numbers from text.
using Cell = std::variant<std::monostate, std::string, long long, double, bool>;

inline Cell cell(std::string_view s) { return std::string(s); }
inline Cell cell(const std::string& s) { return s; }
inline Cell cell(const char* s) { return std::string(s); }
inline Cell cell(int v) { return static_cast<long long>(v); }
inline Cell cell(long v) { return static_cast<long long>(v); }
inline Cell cell(long long v) { return v; }
inline Cell cell(unsigned long v) { return static_cast<long long>(v); }
inline Cell cell(unsigned long long v) { return static_cast<long long>(v); }
inline Cell cell(double v) { return v; }
inline Cell cell(bool v) { return v; }
inline Cell cell(const Cell& c) { return c; }
template <typename T>
Cell cell(const std::optional<T>& v) {
  return v ? cell(*v) : Cell{};
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  template <typename... Ts>
  void add(const Ts&... values) {
    rows.push_back({cell(values)...});
  }
};

enum class OutputFormat { Csv, JsonLines };

inline std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const { return csv::escape_field(s); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return csv::format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  } visit;
  return std::visit(visit, c);
}

inline std::string cell_json(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(const std::string& s) const { return nlohmann::json(s).dump(); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const {
      return std::isfinite(v) ? csv::format_double(v) : "null";
    }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  } visit;
  return std::visit(visit, c);
}

inline void render(std::ostream& out, const Table& t, OutputFormat fmt) {
  if (fmt == OutputFormat::Csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      out << (i ? "," : "") << csv::escape_field(t.columns[i]);
    out << '\n';
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << cell_text(r[i]);
      out << '\n';
    }
    return;
  }
  for (const auto& r : t.rows) {
    out << '{';
    for (std::size_t i = 0; i < r.size(); ++i)
      out << (i ? "," : "") << nlohmann::json(t.columns[i]).dump() << ':' << cell_json(r[i]);
    out << "}\n";
  }
}

}  // namespace gridiron
