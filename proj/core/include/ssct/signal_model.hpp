// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>
#include <vector>

#include "ssct/boundary.hpp"

namespace ssct {

enum class Modulation { qpsk, qam64 };

std::string_view to_string(Modulation m);
Modulation modulation_from_string(std::string_view name);

struct SignalComponent {
  double lambda = 0.0;  // noncentrality 2 |h|^2 |s|^2 / sigma_w^2
  double weight = 0.0;
};

/// Distribution of the normalized energy v = 2|r|^2 / sigma_w^2 under H1:
/// a finite mixture of noncentral chi-square laws with 2 degrees of freedom.
class SignalModel {
 public:
  /// Every symbol has the same energy (QPSK, any PSK): lambda = 2 snr.
  static SignalModel constant_modulus(double snr);
  /// Square 64-QAM with unit average symbol energy at the given SNR.
  static SignalModel qam64(double snr);
  static SignalModel for_modulation(Modulation m, double snr);
  /// Weights must be nonnegative and sum to 1 (tolerance 1e-12).
  static SignalModel mixture(std::vector<SignalComponent> components);

  const std::vector<SignalComponent>& components() const { return components_; }
  double mean_lambda() const;
  double snr() const { return 0.5 * mean_lambda(); }

  double v_pdf(double v) const;
  double v_cdf(double v) const;
  double v_sf(double v) const;

 private:
  explicit SignalModel(std::vector<SignalComponent> c) : components_(std::move(c)) {}
  std::vector<SignalComponent> components_;
};

/// Density of the increment u = v - delta_bar of the normalized statistic
/// under H1; zero for u <= -delta_bar.
double h1_increment_pdf(double u, const SignalModel& model, const SsctConfig& cfg);
/// P(u <= x) under H1.
double h1_increment_cdf(double x, const SignalModel& model, const SsctConfig& cfg);

}  // namespace ssct
