// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "ssct/boundary.hpp"
#include "ssct/miss_detection_grid.hpp"
#include "ssct/performance.hpp"
#include "ssct/signal_model.hpp"

namespace ssct::app {

/// One scenario as read from a JSON config file. SNRs are given in dB in
/// the file and converted to linear once, here.
struct ExperimentConfig {
  std::string name;
  double snr_m_db = 0.0;
  double snr_o_db = 0.0;
  double snr_m = 1.0;  // linear
  double snr_o = 1.0;  // linear
  Modulation modulation = Modulation::qpsk;

  std::optional<double> a_bar;      // default -b_bar
  double b_bar = 0.0;
  double gamma_bar = 0.0;
  std::optional<double> delta_bar;  // default 2 + snr_m
  std::optional<int> M;             // default: energy-detector sample size
  double noise_power = 1.0;

  double alpha_target = 0.05;
  double beta_target = 0.05;
  std::optional<int> m_ed;          // default: from the targets

  bool exact = true;
  bool grid = true;
  bool montecarlo = false;
  std::int64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  GridSpec grid_spec;
  int exact_max_m = EvalOptions{}.exact_max_m;
  Priors priors;
  Precision precision = Precision::automatic;

  void set_snr_m_db(double db);
  void set_snr_o_db(double db);

  int m_ed_min() const;
  SsctConfig detector() const;
  SignalModel model() const;
  EvalOptions eval_options() const;
};

/// Throws ConfigError on schema violations (unknown keys, wrong types,
/// invalid detector parameters).
ExperimentConfig parse_experiment(const nlohmann::json& j);
ExperimentConfig load_experiment(const std::string& path);

double db_to_linear(double db);

}  // namespace ssct::app
