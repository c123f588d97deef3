// SPDX-License-Identifier: Apache-2.0
#include "ssct/baselines.hpp"

#include <cmath>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/non_central_chi_squared.hpp>

#include "ssct/errors.hpp"

namespace ssct {

EnergyDetectorConfig EnergyDetectorConfig::for_targets(int m, double alpha_target, double snr_m) {
  if (m < 1) throw ConfigError("energy detector needs m >= 1");
  const double md = m;
  return {m, 2.0 * md + std::sqrt(4.0 * md) * gaussian_q_inv(alpha_target), snr_m};
}

int ed_min_samples(double snr_m, double alpha_target, double beta_target) {
  if (!(snr_m > 0.0)) throw DomainError("ed_min_samples: SNR must be positive");
  if (!(alpha_target > 0.0 && alpha_target < 1.0) || !(beta_target > 0.0 && beta_target < 1.0)) {
    throw DomainError("ed_min_samples: targets must lie in (0, 1)");
  }
  const double root =
      gaussian_q_inv(alpha_target) - gaussian_q_inv(1.0 - beta_target) * std::sqrt(2.0 * snr_m + 1.0);
  const double m = std::ceil(root * root / (snr_m * snr_m));
  return std::max(1, static_cast<int>(m));
}

ErrorPair ed_error_probs(const EnergyDetectorConfig& cfg, double snr_o) {
  if (cfg.m < 1) throw ConfigError("energy detector needs m >= 1");
  const double m = cfg.m;
  const double g = cfg.threshold_normalized;
  const Probability alpha = gaussian_q((g - 2.0 * m) / std::sqrt(4.0 * m));
  const Probability detect =
      gaussian_q((g - 2.0 * m * (1.0 + snr_o)) / std::sqrt(4.0 * m * (1.0 + 2.0 * snr_o)));
  return {alpha, Probability::clamped(1.0 - detect.value())};
}

ErrorPair ed_error_probs_exact(const EnergyDetectorConfig& cfg, double snr_o) {
  if (cfg.m < 1) throw ConfigError("energy detector needs m >= 1");
  const double dof = 2.0 * cfg.m;
  const double g = cfg.threshold_normalized;
  if (g <= 0.0) return {Probability(1.0), Probability(0.0)};
  const boost::math::chi_squared_distribution<double> h0(dof);
  const double alpha = boost::math::cdf(boost::math::complement(h0, g));
  double beta = 0.0;
  if (snr_o > 0.0) {
    const boost::math::non_central_chi_squared_distribution<double> h1(dof, dof * snr_o);
    beta = boost::math::cdf(h1, g);
  } else {
    beta = boost::math::cdf(h0, g);
  }
  return {Probability::clamped(alpha), Probability::clamped(beta)};
}

double sprt_increment(double v, double lambda) {
  if (!(v >= 0.0)) throw DomainError("sprt_increment: v must be nonnegative");
  if (lambda == 0.0) return 0.0;
  return -0.5 * lambda + log_bessel_i0(std::sqrt(lambda * v));
}

SprtConfig SprtConfig::wald(double alpha_target, double beta_target, double lambda,
                            double noise_power) {
  if (!(alpha_target > 0.0 && alpha_target < 1.0) || !(beta_target > 0.0 && beta_target < 1.0)) {
    throw DomainError("SPRT targets must lie in (0, 1)");
  }
  SprtConfig c;
  c.a_l = std::log(beta_target / (1.0 - alpha_target));
  c.b_l = std::log((1.0 - beta_target) / alpha_target);
  c.lambda = lambda;
  c.noise_power = noise_power;
  c.validate();
  return c;
}

void SprtConfig::validate() const {
  if (!(a_l < 0.0 && b_l > 0.0)) throw ConfigError("SPRT thresholds need a_L < 0 < b_L");
  if (!(lambda > 0.0)) throw ConfigError("SPRT noncentrality must be positive");
  if (!(noise_power > 0.0)) throw ConfigError("noise power must be positive");
  if (max_samples < 1) throw ConfigError("SPRT sample cap must be positive");
}

SprtOutcome sprt_run(const SprtConfig& cfg, const std::function<double()>& next) {
  cfg.validate();
  const double to_bar = 2.0 / cfg.noise_power;
  double llr = 0.0;
  for (std::int64_t n = 1; n <= cfg.max_samples; ++n) {
    llr += sprt_increment(next() * to_bar, cfg.lambda);
    if (llr >= cfg.b_l) return {Verdict::reject_h0, n};
    if (llr <= cfg.a_l) return {Verdict::accept_h0, n};
  }
  throw ContractError("SPRT reached the sample cap of " + std::to_string(cfg.max_samples) +
                      " without a decision");
}

}  // namespace ssct
