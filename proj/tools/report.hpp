// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ssct/performance.hpp"

namespace ssct::app {

/// A rectangular table of text cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

/// RFC 4180: CRLF line ends, fields quoted when they hold a comma, quote or
/// line break.
void write_csv(std::ostream& os, const Table& t);
void write_markdown(std::ostream& os, const Table& t);

/// Shortest round-trip-stable text for a number ("%.10g").
std::string fmt(double v);
std::string fmt(long long v);

/// The three cells value, tol, method.
std::vector<std::string> cells(const Estimate& e);

}  // namespace ssct::app
