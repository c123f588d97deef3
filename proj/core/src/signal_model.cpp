// SPDX-License-Identifier: Apache-2.0
#include "ssct/signal_model.hpp"

#include <map>
#include <cmath>
#include <string>

#include "ssct/errors.hpp"
#include "ssct/special_functions.hpp"

namespace ssct {

std::string_view to_string(Modulation m) { return m == Modulation::qpsk ? "qpsk" : "qam64"; }

Modulation modulation_from_string(std::string_view name) {
  if (name == "qpsk") return Modulation::qpsk;
  if (name == "qam64" || name == "64qam") return Modulation::qam64;
  throw ConfigError("unknown modulation '" + std::string(name) + "' (expected qpsk or qam64)");
}

SignalModel SignalModel::constant_modulus(double snr) {
  if (!(snr >= 0.0) || !std::isfinite(snr)) throw ConfigError("SNR must be finite and nonnegative");
  return SignalModel({{2.0 * snr, 1.0}});
}

SignalModel SignalModel::qam64(double snr) {
  if (!(snr >= 0.0) || !std::isfinite(snr)) throw ConfigError("SNR must be finite and nonnegative");
  // Enumerate the 8x8 grid {+-1, +-3, +-5, +-7}^2 and merge equal energies;
  // the mean symbol energy is 42.
  std::map<int, int> count;
  for (int i = -7; i <= 7; i += 2) {
    for (int q = -7; q <= 7; q += 2) ++count[i * i + q * q];
  }
  std::vector<SignalComponent> c;
  for (const auto& [energy, n] : count) c.push_back({2.0 * snr * energy / 42.0, n / 64.0});
  return SignalModel(std::move(c));
}

SignalModel SignalModel::for_modulation(Modulation m, double snr) {
  return m == Modulation::qpsk ? constant_modulus(snr) : qam64(snr);
}

SignalModel SignalModel::mixture(std::vector<SignalComponent> components) {
  if (components.empty()) throw ConfigError("signal mixture needs at least one component");
  double total = 0.0;
  for (const auto& c : components) {
    if (!(c.lambda >= 0.0) || !std::isfinite(c.lambda)) {
      throw ConfigError("noncentrality must be finite and nonnegative");
    }
    if (!(c.weight >= 0.0)) throw ConfigError("mixture weights must be nonnegative");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ConfigError("mixture weights must sum to 1");
  return SignalModel(std::move(components));
}

double SignalModel::mean_lambda() const {
  double m = 0.0;
  for (const auto& c : components_) m += c.weight * c.lambda;
  return m;
}

double SignalModel::v_pdf(double v) const {
  double p = 0.0;
  for (const auto& c : components_) p += c.weight * noncentral_chisq2_pdf(v, c.lambda);
  return p;
}

double SignalModel::v_cdf(double v) const {
  double p = 0.0;
  for (const auto& c : components_) p += c.weight * noncentral_chisq2_cdf(v, c.lambda).value();
  return p;
}

double SignalModel::v_sf(double v) const {
  double p = 0.0;
  for (const auto& c : components_) p += c.weight * noncentral_chisq2_sf(v, c.lambda).value();
  return p;
}

double h1_increment_pdf(double u, const SignalModel& model, const SsctConfig& cfg) {
  const double v = u + cfg.delta_bar;
  if (v <= 0.0) return 0.0;
  return model.v_pdf(v);
}

double h1_increment_cdf(double x, const SignalModel& model, const SsctConfig& cfg) {
  return model.v_cdf(x + cfg.delta_bar);
}

}  // namespace ssct
