// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>

#include "ssct/detector.hpp"
#include "ssct/special_functions.hpp"

namespace ssct {

/// Fixed-size energy detector on the normalized statistic 2T(r)/sigma_w^2,
/// T(r) = sum_{i<=m} |r_i|^2, using its normal limit.
struct EnergyDetectorConfig {
  int m = 0;
  double threshold_normalized = 0.0;
  double snr_m = 0.0;

  /// Threshold giving false-alarm probability alpha_target under H0.
  static EnergyDetectorConfig for_targets(int m, double alpha_target, double snr_m);
};

struct ErrorPair {
  Probability alpha;
  Probability beta;
};

/// ceil(snr^-2 [Q^-1(alpha) - Q^-1(1 - beta) sqrt(2 snr + 1)]^2), at least 1.
int ed_min_samples(double snr_m, double alpha_target, double beta_target);

ErrorPair ed_error_probs(const EnergyDetectorConfig& cfg, double snr_o);
/// Same threshold evaluated under the exact central / noncentral chi-square
/// laws with 2m degrees of freedom (constant-modulus signal).
ErrorPair ed_error_probs_exact(const EnergyDetectorConfig& cfg, double snr_o);

/// Log-likelihood-ratio increment of one normalized energy v for a
/// constant-modulus signal: -lambda/2 + ln I0(sqrt(lambda v)).
double sprt_increment(double v, double lambda);

struct SprtConfig {
  double a_l = 0.0;
  double b_l = 0.0;
  double lambda = 0.0;
  double noise_power = 1.0;
  std::int64_t max_samples = 1'000'000;

  /// Wald thresholds a_L = ln(beta/(1-alpha)), b_L = ln((1-beta)/alpha).
  static SprtConfig wald(double alpha_target, double beta_target, double lambda,
                         double noise_power = 1.0);
  void validate() const;
};

struct SprtOutcome {
  Verdict verdict = Verdict::continue_sampling;
  std::int64_t samples = 0;
};

/// Non-truncated SPRT on raw energies; throws StreamExhausted if `next`
/// runs dry and ContractError once max_samples is reached undecided.
SprtOutcome sprt_run(const SprtConfig& cfg, const std::function<double()>& next);

}  // namespace ssct
