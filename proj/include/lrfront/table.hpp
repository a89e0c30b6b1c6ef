// Copyright 2026 The lrfront Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lrfront/error.hpp"

namespace lrfront {

/// A token is a literal word such as `unreachable`; an empty cell means the
/// value is undefined for that row.
struct Token {
  std::string text;
  bool operator==(const Token&) const = default;
};

using Cell = std::variant<std::monostate, double, std::int64_t, Token>;

inline const Token kUnreachable{"unreachable"};

/// Rectangular result with an ordered metadata block.
class ResultTable {
 public:
  explicit ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void set_meta(const std::string& key, std::string value) {
    for (auto& [k, v] : meta_) {
      if (k == key) {
        v = std::move(value);
        return;
      }
    }
    meta_.emplace_back(key, std::move(value));
  }

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
      throw InvalidArgument("row has " + std::to_string(row.size()) + " cells, table has " +
                            std::to_string(columns_.size()) + " columns");
    }
    rows_.push_back(std::move(row));
  }

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& meta() const { return meta_; }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> meta_;
};

/// 17 significant digits; infinities and NaN become tokens.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Text of a cell, shared by both output formats. Second member is true
/// when the text is numeric.
inline std::pair<std::string, bool> cell_text(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return {"", false};
  if (const auto* d = std::get_if<double>(&c)) return {format_number(*d), std::isfinite(*d)};
  if (const auto* i = std::get_if<std::int64_t>(&c)) return {std::to_string(*i), true};
  return {std::get<Token>(c).text, false};
}

inline std::string render_csv(const ResultTable& t) {
  std::ostringstream out;
  for (const auto& [k, v] : t.meta()) {
    std::string flat = v;
    for (char& ch : flat) {
      if (ch == '\n') ch = ' ';
    }
    out << "# " << k << ": " << flat << '\n';
  }
  for (std::size_t i = 0; i < t.columns().size(); ++i) out << (i ? "," : "") << t.columns()[i];
  out << '\n';
  for (const auto& row : t.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]).first;
    out << '\n';
  }
  return out.str();
}

/// Numbers are written with the same text as the CSV form rather than by the
/// JSON library's own float printer.
inline std::string render_json(const ResultTable& t) {
  const auto quote = [](const std::string& s) { return nlohmann::json(s).dump(); };
  std::ostringstream out;
  out << "{\n  \"meta\": {";
  for (std::size_t i = 0; i < t.meta().size(); ++i) {
    out << (i ? ",\n    " : "\n    ") << quote(t.meta()[i].first) << ": " << quote(t.meta()[i].second);
  }
  out << (t.meta().empty() ? "},\n" : "\n  },\n");
  out << "  \"columns\": [";
  for (std::size_t i = 0; i < t.columns().size(); ++i) out << (i ? ", " : "") << quote(t.columns()[i]);
  out << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows().size(); ++r) {
    out << (r ? ",\n    [" : "\n    [");
    const auto& row = t.rows()[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto [text, numeric] = cell_text(row[i]);
      out << (i ? ", " : "");
      if (std::holds_alternative<std::monostate>(row[i])) {
        out << "null";
      } else {
        out << (numeric ? text : quote(text));
      }
    }
    out << "]";
  }
  out << (t.rows().empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

/// Writes through a sibling temporary file and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open '" + tmp.string() + "' for writing");
    f << content;
    f.flush();
    if (!f) throw Error("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move output into '" + path.string() + "'");
  }
}

}  // namespace lrfront
