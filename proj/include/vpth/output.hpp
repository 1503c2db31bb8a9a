#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "vpth/errors.hpp"

namespace vpth {

// Deterministic numeric formatting: 10 significant digits, scientific
// notation for |x| outside [1e-3, 1e6).  Repeated runs must produce
// byte-identical files.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[48];
  const double ax = std::abs(x);
  if (ax < 1e-3 || ax >= 1e6) {
    std::snprintf(buf, sizeof(buf), "%.9e", x);
  } else {
    const int before = static_cast<int>(std::floor(std::log10(ax))) + 1;
    const int decimals = std::max(0, 10 - before);
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
  }
  return buf;
}

struct Cell {
  std::string text;
  bool numeric = false;
};

inline Cell cell(double v) { return {format_number(v), true}; }
inline Cell cell(int v) { return {std::to_string(v), true}; }
inline Cell cell(std::string s) { return {std::move(s), false}; }

// Column-ordered table with string metadata, the common currency between
// the computational modules and the CSV/JSON emitters.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> r) {
    if (r.size() != columns.size())
      throw DomainError("Table: row width does not match column count");
    rows.push_back(std::move(r));
  }
};

inline void write_csv(std::ostream& os, const Table& t) {
  for (const auto& [k, v] : t.meta) os << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "");
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << row[i].text << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
}

inline void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.meta) j["meta"][k] = v;
  j["data"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i].numeric) {
        if (row[i].text == "nan" || row[i].text == "inf" || row[i].text == "-inf")
          o[t.columns[i]] = nullptr;
        else
          o[t.columns[i]] = std::stod(row[i].text);
      } else {
        o[t.columns[i]] = row[i].text;
      }
    }
    j["data"].push_back(std::move(o));
  }
  os << j.dump(2) << "\n";
}

} // namespace vpth
