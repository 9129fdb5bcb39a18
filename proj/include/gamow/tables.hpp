#pragma once

// Machine-readable result tables.  CSV files carry '#'-prefixed header lines
// naming the table, its annotations and its columns (with units); JSON
// mirrors the same fields.  Both formats parse back into the same Table, so
// every file the CLI writes is loadable by the round-trip parser below.
// Data lines never contain timestamps or absolute paths: identical inputs
// produce byte-identical files.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gamow/errors.hpp"

namespace gamow {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Column {
  std::string name;
  std::string unit;  // "dimensionless", "energy", "time", ...
};

struct Table {
  std::string name;
  std::vector<std::pair<std::string, std::string>> annotations;  // ordered key/value notes
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

namespace detail {

inline std::string cell_to_string(const Cell& cell) {
  if (std::holds_alternative<std::int64_t>(cell))
    return std::to_string(std::get<std::int64_t>(cell));
  if (std::holds_alternative<double>(cell)) return format_double(std::get<double>(cell));
  const std::string& s = std::get<std::string>(cell);
  if (s.find(',') != std::string::npos || s.find('\n') != std::string::npos)
    throw Error("table cell may not contain ',' or newline: " + s);
  return s;
}

inline Cell classify_cell(const std::string& text) {
  if (!text.empty()) {
    std::int64_t i = 0;
    auto [p1, e1] = std::from_chars(text.data(), text.data() + text.size(), i);
    if (e1 == std::errc() && p1 == text.data() + text.size()) return Cell(i);
    char* end = nullptr;
    const double d = std::strtod(text.c_str(), &end);
    if (end == text.c_str() + text.size() && end != text.c_str()) return Cell(d);
  }
  return Cell(text);
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream ss(line);
  while (std::getline(ss, token, sep)) out.push_back(token);
  if (!line.empty() && line.back() == sep) out.push_back("");
  return out;
}

}  // namespace detail

inline std::string to_csv(const Table& table) {
  std::ostringstream out;
  out << "# table: " << table.name << "\n";
  for (const auto& [key, value] : table.annotations) out << "# " << key << ": " << value << "\n";
  for (const Column& c : table.columns) out << "# column: " << c.name << " " << c.unit << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw Error("table row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << detail::cell_to_string(row[i]);
    }
    out << "\n";
  }
  return out.str();
}

inline Table parse_csv(const std::string& text) {
  Table table;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body[0] == ' ') body.erase(0, 1);
      const auto colon = body.find(": ");
      if (colon == std::string::npos) continue;
      const std::string key = body.substr(0, colon);
      const std::string value = body.substr(colon + 2);
      if (key == "table") {
        table.name = value;
      } else if (key == "column") {
        const auto space = value.find(' ');
        if (space == std::string::npos)
          table.columns.push_back({value, ""});
        else
          table.columns.push_back({value.substr(0, space), value.substr(space + 1)});
      } else {
        table.annotations.emplace_back(key, value);
      }
      continue;
    }
    std::vector<Cell> row;
    for (const std::string& tok : detail::split(line, ','))
      row.push_back(detail::classify_cell(tok));
    if (row.size() != table.columns.size())
      throw Error("parse_csv: row has " + std::to_string(row.size()) + " cells, expected " +
                  std::to_string(table.columns.size()));
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline std::string to_json(const Table& table) {
  nlohmann::ordered_json j;
  j["table"] = table.name;
  j["annotations"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.annotations) j["annotations"][key] = value;
  j["columns"] = nlohmann::ordered_json::array();
  for (const Column& c : table.columns) j["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw Error("table row width mismatch");
    nlohmann::ordered_json jr = nlohmann::ordered_json::array();
    for (const Cell& cell : row) {
      if (std::holds_alternative<std::int64_t>(cell))
        jr.push_back(std::get<std::int64_t>(cell));
      else if (std::holds_alternative<double>(cell))
        jr.push_back(std::get<double>(cell));
      else
        jr.push_back(std::get<std::string>(cell));
    }
    j["rows"].push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

inline Table parse_json(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  Table table;
  table.name = j.at("table").get<std::string>();
  if (j.contains("annotations"))
    for (const auto& [key, value] : j.at("annotations").items())
      table.annotations.emplace_back(key, value.get<std::string>());
  for (const auto& jc : j.at("columns"))
    table.columns.push_back({jc.at("name").get<std::string>(), jc.at("unit").get<std::string>()});
  for (const auto& jr : j.at("rows")) {
    std::vector<Cell> row;
    for (const auto& cell : jr) {
      if (cell.is_number_integer())
        row.push_back(Cell(cell.get<std::int64_t>()));
      else if (cell.is_number_float())
        row.push_back(Cell(cell.get<double>()));
      else
        row.push_back(Cell(cell.get<std::string>()));
    }
    if (row.size() != table.columns.size()) throw Error("parse_json: row width mismatch");
    table.rows.push_back(std::move(row));
  }
  return table;
}

/// Structural equality with a numeric tolerance on double cells; the CSV
/// writer keeps 13 significant digits, so re-parsed values match to ~1e-12.
inline bool tables_match(const Table& x, const Table& y, double rel = 1e-9) {
  if (x.name != y.name || x.annotations != y.annotations) return false;
  if (x.columns.size() != y.columns.size() || x.rows.size() != y.rows.size()) return false;
  for (std::size_t i = 0; i < x.columns.size(); ++i)
    if (x.columns[i].name != y.columns[i].name || x.columns[i].unit != y.columns[i].unit)
      return false;
  for (std::size_t r = 0; r < x.rows.size(); ++r) {
    if (x.rows[r].size() != y.rows[r].size()) return false;
    for (std::size_t c = 0; c < x.rows[r].size(); ++c) {
      const Cell& a = x.rows[r][c];
      const Cell& b = y.rows[r][c];
      const bool a_num =
          std::holds_alternative<double>(a) || std::holds_alternative<std::int64_t>(a);
      const bool b_num =
          std::holds_alternative<double>(b) || std::holds_alternative<std::int64_t>(b);
      if (a_num != b_num) return false;
      if (a_num) {
        auto as_double = [](const Cell& cell) {
          return std::holds_alternative<double>(cell)
                     ? std::get<double>(cell)
                     : static_cast<double>(std::get<std::int64_t>(cell));
        };
        const double av = as_double(a), bv = as_double(b);
        if (std::abs(av - bv) > rel * std::max({1.0, std::abs(av), std::abs(bv)})) return false;
      } else if (std::get<std::string>(a) != std::get<std::string>(b)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace gamow
