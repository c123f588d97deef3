// SPDX-License-Identifier: Apache-2.0
#include "ssct/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "ssct/errors.hpp"

namespace ssct {

namespace {

constexpr double kPoissonTail = 1e-17;

// Sum_k Poisson(k; mu) * term(k), walking outward from the mode so that a
// large mu does not underflow the first weight.
template <class Term>
double poisson_mixture(double mu, Term&& term) {
  if (mu == 0.0) return term(0);
  const long mode = static_cast<long>(std::floor(mu));
  const double log_w_mode =
      -mu + static_cast<double>(mode) * std::log(mu) - std::lgamma(static_cast<double>(mode) + 1.0);
  const double w_mode = std::exp(log_w_mode);

  double sum = w_mode * term(mode);
  double w = w_mode;
  for (long k = mode + 1;; ++k) {
    w *= mu / static_cast<double>(k);
    sum += w * term(k);
    if (w < kPoissonTail) break;
  }
  w = w_mode;
  for (long k = mode; k > 0; --k) {
    w *= static_cast<double>(k) / mu;
    sum += w * term(k - 1);
    if (w < kPoissonTail) break;
  }
  return sum;
}

}  // namespace

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError("probability out of [0, 1]: " + std::to_string(value));
  }
}

Probability Probability::clamped(double value, double slack) {
  if (value < 0.0 && value >= -slack) return Probability(0.0);
  if (value > 1.0 && value <= 1.0 + slack) return Probability(1.0);
  return Probability(value);
}

Probability gaussian_q(double x) {
  return Probability::clamped(0.5 * std::erfc(x / std::numbers::sqrt2));
}

double gaussian_q_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("gaussian_q_inv: p must lie in (0, 1)");
  }
  double x = std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
  // One Newton step against erfc tightens the last couple of ulps.
  const double density = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  if (density > 0.0) x += (gaussian_q(x).value() - p) / density;
  return x;
}

double log_bessel_i0(double x) {
  if (!(x >= 0.0)) throw DomainError("log_bessel_i0: x must be nonnegative");
  if (x <= 700.0) return std::log(boost::math::cyl_bessel_i(0, x));

  // Hankel asymptotic expansion of e^{-x} sqrt(2 pi x) I0(x).
  double series = 1.0;
  double term = 1.0;
  for (int k = 1; k < 30; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= odd * odd / (8.0 * k * x);
    series += term;
    if (term < 1e-18) break;
  }
  return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(series);
}

Probability noncentral_chisq2_cdf(double x, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("noncentral_chisq2_cdf: lambda must be nonnegative");
  if (x <= 0.0) return Probability(0.0);
  if (lambda == 0.0) return Probability::clamped(-std::expm1(-0.5 * x));
  const double half_x = 0.5 * x;
  const double value = poisson_mixture(0.5 * lambda, [half_x](long k) {
    return boost::math::gamma_p(static_cast<double>(k) + 1.0, half_x);
  });
  return Probability::clamped(value);
}

Probability noncentral_chisq2_sf(double x, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("noncentral_chisq2_sf: lambda must be nonnegative");
  if (x <= 0.0) return Probability(1.0);
  if (lambda == 0.0) return Probability::clamped(std::exp(-0.5 * x));
  const double half_x = 0.5 * x;
  const double value = poisson_mixture(0.5 * lambda, [half_x](long k) {
    return boost::math::gamma_q(static_cast<double>(k) + 1.0, half_x);
  });
  return Probability::clamped(value);
}

double noncentral_chisq2_pdf(double x, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("noncentral_chisq2_pdf: lambda must be nonnegative");
  if (x < 0.0) return 0.0;
  return 0.5 * std::exp(-0.5 * (x + lambda) + log_bessel_i0(std::sqrt(lambda * x)));
}

}  // namespace ssct
