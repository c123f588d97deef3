// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "experiment.hpp"
#include "report.hpp"

namespace ssct::app {

/// Command-line overrides applied on top of a config.
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::optional<Precision> precision;

  void apply(ExperimentConfig& c) const;
};

/// Analytic report (exact H0 where feasible, grid H1) for one scenario.
/// H0 quantities may be passed in to skip recomputation.
PerformanceReport numerical_report(const ExperimentConfig& c,
                                   const std::optional<H0Summary>& h0 = std::nullopt);
/// Both hypotheses simulated.
PerformanceReport montecarlo_report(const ExperimentConfig& c,
                                    const std::optional<H0Summary>& h0 = std::nullopt);

/// metric, value, tol, method rows for one config.
Table cmd_evaluate(const ExperimentConfig& c);

/// The four comparison tables; throws ConfigError for which outside 1..4.
Table cmd_table(int which, const RunOptions& run);
/// Built-in scenarios behind each table column (or row, for table 4).
std::vector<ExperimentConfig> table_scenarios(int which);

/// Parses "v1,v2,..." or "start:step:stop"; throws ConfigError when empty
/// or malformed.
std::vector<double> parse_range(const std::string& text);
/// One evaluated row per value; param is snr_o_db, b_bar, gamma_bar or M.
Table cmd_sweep(const std::string& param, const std::vector<double>& values,
                const ExperimentConfig& base);

}  // namespace ssct::app
