// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "ssct/errors.hpp"
#include "ssct/special_functions.hpp"

using namespace ssct;

namespace {

// Q(x) evaluated with 50 decimal digits.
double q_oracle(double x) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big v = boost::math::erfc(Big(x) / boost::multiprecision::sqrt(Big(2))) / 2;
  return static_cast<double>(v);
}

double pdf_oracle(double v, double lambda) {
  return 0.5 * std::exp(-(v + lambda) / 2) * std::cyl_bessel_i(0.0, std::sqrt(lambda * v));
}

double cdf_oracle(double x, double lambda) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [&](double v) { return pdf_oracle(v, lambda); };
  return gauss_kronrod<double, 31>::integrate(f, 0.0, x, 15, 1e-14);
}

}  // namespace

TEST_CASE("gaussian_q examples") {
  CHECK(double(gaussian_q(0.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(gaussian_q(1.6448536) - 0.05) < 1e-6);
  CHECK(double(gaussian_q(8.0)) < 1e-15);
  CHECK(double(gaussian_q(8.0)) > 0.0);
}

TEST_CASE("gaussian_q relative accuracy and symmetry") {
  for (double x = -8.0; x <= 8.0; x += 0.125) {
    const double ref = q_oracle(x);
    CHECK(std::abs(gaussian_q(x) - ref) <= 1e-12 * ref);
    CHECK(std::abs(gaussian_q(x) + gaussian_q(-x) - 1.0) <= 1e-12);
  }
  double prev = 1.0;
  for (double x = -10.0; x <= 10.0; x += 0.01) {
    CHECK(gaussian_q(x) <= prev);
    prev = gaussian_q(x);
  }
}

TEST_CASE("gaussian_q_inv") {
  CHECK(gaussian_q_inv(0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(gaussian_q_inv(0.05) - 1.6448536) < 1e-6);
  CHECK(std::abs(gaussian_q_inv(0.95) + 1.6448536) < 1e-6);
  for (double x = -6.0; x <= 6.0; x += 0.05) {
    CHECK(std::abs(gaussian_q_inv(gaussian_q(x)) - x) < 1e-8);
  }
  for (double p : {1e-12, 1e-6, 0.01, 0.3, 0.7, 0.999}) {
    CHECK(std::abs(gaussian_q(gaussian_q_inv(p)) - p) < 1e-10);
  }
  CHECK_THROWS_AS(gaussian_q_inv(0.0), DomainError);
  CHECK_THROWS_AS(gaussian_q_inv(1.0), DomainError);
  CHECK_THROWS_AS(gaussian_q_inv(-0.2), DomainError);
}

TEST_CASE("log_bessel_i0") {
  CHECK(log_bessel_i0(0.0) == 0.0);
  // 30-term power series
  double s = 0.0, term = 1.0;
  for (int k = 0; k < 30; ++k) {
    if (k > 0) term *= 0.25 / (double(k) * k);
    s += term;
  }
  CHECK(std::abs(log_bessel_i0(1.0) - std::log(s)) < 1e-9);
  CHECK(std::abs(log_bessel_i0(500.0) - (500.0 - 0.5 * std::log(2 * M_PI * 500.0))) < 1e-3);
  // asymptotic series with three correction terms
  const double x = 500.0;
  const double asym = x - 0.5 * std::log(2 * M_PI * x) +
                      std::log(1 + 1 / (8 * x) + 9 / (128 * x * x) + 225 / (3072 * x * x * x));
  CHECK(std::abs(log_bessel_i0(x) - asym) < 1e-6);
  for (double v : {1e-8, 0.3, 2.0, 17.0, 90.0, 400.0, 700.0}) {
    const double ref = std::cyl_bessel_i(0.0, v);
    CHECK(std::abs(std::exp(log_bessel_i0(v)) - ref) <= 1e-10 * ref);
  }
  CHECK(std::isfinite(log_bessel_i0(1e6)));
  CHECK_THROWS_AS(log_bessel_i0(-1.0), DomainError);
}

TEST_CASE("noncentral_chisq2_cdf examples") {
  CHECK(double(noncentral_chisq2_cdf(0.0, 3.0)) == 0.0);
  CHECK(double(noncentral_chisq2_cdf(-1.0, 0.5)) == 0.0);
  CHECK(std::abs(noncentral_chisq2_cdf(4.60517, 0.0) - 0.9) < 1e-8);
  CHECK(std::abs(noncentral_chisq2_cdf(6.0, 2.0) - cdf_oracle(6.0, 2.0)) < 1e-10);
}

TEST_CASE("noncentral_chisq2 against quadrature of the density") {
  for (double lambda : {0.0, 0.05, 0.632, 2.0, 8.0, 30.0}) {
    for (double x : {0.1, 1.0, 3.0, 7.5, 20.0, 60.0}) {
      CHECK(std::abs(noncentral_chisq2_cdf(x, lambda) - cdf_oracle(x, lambda)) < 1e-10);
      CHECK(std::abs(noncentral_chisq2_cdf(x, lambda) + noncentral_chisq2_sf(x, lambda) - 1.0) <
            1e-12);
      const double pdf = noncentral_chisq2_pdf(x, lambda);
      CHECK(std::abs(pdf - pdf_oracle(x, lambda)) <= 1e-10 * pdf_oracle(x, lambda) + 1e-300);
    }
  }
}

TEST_CASE("noncentral_chisq2 derivative matches density") {
  const double h = 1e-4;
  for (double lambda : {0.3, 2.0, 6.0}) {
    for (double x : {0.5, 2.0, 5.0, 12.0}) {
      const double fd =
          (noncentral_chisq2_cdf(x + h, lambda) - noncentral_chisq2_cdf(x - h, lambda)) / (2 * h);
      const double pdf = pdf_oracle(x, lambda);
      CHECK(std::abs(fd - pdf) <= 1e-5 * pdf);
    }
  }
}

TEST_CASE("noncentral_chisq2_cdf monotonicity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(0.01, 40.0), ul(0.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const double x1 = ux(rng), x2 = ux(rng), l1 = ul(rng), l2 = ul(rng);
    const double lo = std::min(x1, x2), hi = std::max(x1, x2);
    CHECK(noncentral_chisq2_cdf(lo, l1) <= noncentral_chisq2_cdf(hi, l1));
    const double la = std::min(l1, l2), lb = std::max(l1, l2);
    CHECK(noncentral_chisq2_cdf(x1, la) >= noncentral_chisq2_cdf(x1, lb));
  }
}

TEST_CASE("Probability checks its range") {
  CHECK(Probability(0.25).value() == 0.25);
  CHECK_THROWS(Probability(1.5));
  CHECK_THROWS(Probability(-0.1));
  CHECK(Probability::clamped(1.0 + 1e-13).value() == 1.0);
  CHECK_THROWS(Probability::clamped(1.0 + 1e-6));
}
