// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace ssct {

/// A probability in [0, 1]. Construction outside that range throws
/// DomainError; reads convert implicitly to double.
class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(double value);

  /// Clamps tiny rounding excursions (|excess| <= slack) back into [0, 1].
  static Probability clamped(double value, double slack = 1e-12);

  constexpr double value() const noexcept { return value_; }
  constexpr operator double() const noexcept { return value_; }

 private:
  double value_ = 0.0;
};

/// Standard normal upper tail Q(x) = P(Z > x).
Probability gaussian_q(double x);

/// Inverse of gaussian_q on (0, 1). Throws DomainError outside.
double gaussian_q_inv(double p);

/// ln I0(x) for x >= 0, valid far beyond the overflow point of I0.
double log_bessel_i0(double x);

/// P(V <= x) for V noncentral chi-square with 2 degrees of freedom and
/// noncentrality lambda, i.e. 1 - Q1(sqrt(lambda), sqrt(x)).
Probability noncentral_chisq2_cdf(double x, double lambda);

/// Complement of noncentral_chisq2_cdf, accurate in the upper tail.
Probability noncentral_chisq2_sf(double x, double lambda);

/// Density of the same distribution: 0.5 exp(-(x + lambda)/2) I0(sqrt(lambda x)).
double noncentral_chisq2_pdf(double x, double lambda);

}  // namespace ssct
