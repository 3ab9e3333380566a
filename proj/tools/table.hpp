#pragma once
// Row-oriented output shared by all subcommands. Cells carry preformatted
// text so CSV and JSON print identical digits ("%.17g" for floats, exact
// decimal strings for big integers and rationals).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace bfly::cli {

struct Cell {
  std::string text;
  bool numeric = false;  // bare JSON number; otherwise a JSON string
};

inline Cell cell(double x) {
  if (!std::isfinite(x)) return {"null", true};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return {buf, true};
}
inline Cell cell(std::int64_t x) { return {std::to_string(x), true}; }
inline Cell cell(std::uint64_t x) { return {std::to_string(x), true}; }
inline Cell cell(unsigned x) { return {std::to_string(x), true}; }
inline Cell cell(int x) { return {std::to_string(x), true}; }
inline Cell cell(bool x) { return {x ? "true" : "false", true}; }
inline Cell cell(const std::string& s) { return {s, false}; }
inline Cell cell(const char* s) { return {s, false}; }
// Exact values stay strings in JSON so readers do not round them.
inline Cell cell(const mpz_class& x) { return {x.get_str(), false}; }
inline Cell cell(const mpq_class& x) { return {x.get_str(), false}; }

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  template <class... Ts>
  void add(const Ts&... xs) {
    rows.push_back({cell(xs)...});
  }
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i].text);
    os << '\n';
  }
}

inline void write_json(std::ostream& os, const Table& t) {
  os << "[\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << "  {";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      const Cell& c = t.rows[r][i];
      os << (i ? ", " : "") << nlohmann::json(t.columns[i]).dump() << ": "
         << (c.numeric ? c.text : nlohmann::json(c.text).dump());
    }
    os << '}' << (r + 1 < t.rows.size() ? "," : "") << '\n';
  }
  os << "]\n";
}

}  // namespace bfly::cli
