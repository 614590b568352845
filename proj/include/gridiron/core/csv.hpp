#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "gridiron/error.hpp"

namespace gridiron::csv {

// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
inline std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

inline std::string escape_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Header-indexed view over a CSV file's records. Line numbers are 1-based
// and count the header as line 1.
class Reader {
 public:
  Reader(std::istream& in, const std::vector<std::string>& required,
         std::string source)
      : source_(std::move(source)) {
    std::string line;
    if (!std::getline(in, line))
      throw Error(ErrorCode::MissingColumn, source_ + ": empty file, no header");
    strip_cr(line);
    header_ = split_record(line);
    for (const auto& name : required) {
      auto idx = find_column(name);
      if (!idx)
        throw Error(ErrorCode::MissingColumn,
                    source_ + ": missing column '" + name + "'");
      columns_.push_back(*idx);
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      strip_cr(line);
      if (line.empty()) continue;
      auto fields = split_record(line);
      if (fields.size() != header_.size())
        throw Error(ErrorCode::MalformedRow,
                    source_ + " line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header_.size()) + " fields, got " +
                        std::to_string(fields.size()));
      rows_.push_back({line_no, std::move(fields)});
    }
  }

  struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
  };

  const std::vector<Row>& rows() const { return rows_; }
  const std::string& source() const { return source_; }

  // Field `k` of the required-column list for `row`.
  const std::string& at(const Row& row, std::size_t k) const {
    return row.fields[columns_[k]];
  }

 private:
  static void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
  }
  std::optional<std::size_t> find_column(const std::string& name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
      if (header_[i] == name) return i;
    return std::nullopt;
  }

  std::string source_;
  std::vector<std::string> header_;
  std::vector<std::size_t> columns_;
  std::vector<Row> rows_;
};

inline Error malformed(const Reader& r, const Reader::Row& row,
                       const std::string& what) {
  return Error(ErrorCode::MalformedRow,
               r.source() + " line " + std::to_string(row.line) + ": " + what);
}

inline std::optional<long long> to_int(std::string_view s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    return std::nullopt;
  return v;
}

inline std::optional<bool> to_bool(std::string_view s) {
  if (s == "true") return true;
  if (s == "false") return false;
  return std::nullopt;
}

// Shortest representation that round-trips to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return in;
}

}  // namespace gridiron::csv
