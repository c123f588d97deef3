// SPDX-License-Identifier: Apache-2.0
#include "report.hpp"

#include <cmath>
#include <cstdio>

#include "ssct/errors.hpp"

namespace ssct::app {

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw ContractError("table row width does not match header");
  rows.push_back(std::move(row));
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void csv_line(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_field(fields[i]);
  }
  os << "\r\n";
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
  csv_line(os, t.header);
  for (const auto& r : t.rows) csv_line(os, r);
}

void write_markdown(std::ostream& os, const Table& t) {
  os << '|';
  for (const auto& h : t.header) os << ' ' << md_cell(h) << " |";
  os << "\n|";
  for (std::size_t i = 0; i < t.header.size(); ++i) os << " --- |";
  os << '\n';
  for (const auto& r : t.rows) {
    os << '|';
    for (const auto& c : r) os << ' ' << md_cell(c) << " |";
    os << '\n';
  }
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(long long v) { return std::to_string(v); }

std::vector<std::string> cells(const Estimate& e) {
  return {fmt(e.value), fmt(e.tol), std::string(to_string(e.method))};
}

}  // namespace ssct::app
