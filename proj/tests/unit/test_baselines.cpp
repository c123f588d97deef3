// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include <boost/math/distributions/normal.hpp>

#include "doctest.h"
#include "ssct/baselines.hpp"
#include "ssct/errors.hpp"

using namespace ssct;

namespace {

int min_samples_oracle(double snr, double alpha, double beta) {
  const boost::math::normal_distribution<double> z;
  const double qa = boost::math::quantile(boost::math::complement(z, alpha));
  const double qb = boost::math::quantile(boost::math::complement(z, 1.0 - beta));
  const double r = qa - qb * std::sqrt(2.0 * snr + 1.0);
  return std::max(1, static_cast<int>(std::ceil(r * r / (snr * snr))));
}

double noncentral_draw(std::mt19937_64& rng, double lambda) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double x = std::sqrt(lambda) + n(rng);
  const double y = n(rng);
  return x * x + y * y;
}

}  // namespace

TEST_CASE("ed_min_samples") {
  CHECK(std::abs(ed_min_samples(1.0, 0.01, 0.01) - 40) <= 1);
  CHECK(ed_min_samples(1.0, 0.5, 0.5) == 1);
  for (double db : {0.0, -5.0, -10.0, -15.0}) {
    const double snr = std::pow(10.0, db / 10.0);
    for (double t : {0.01, 0.055, 0.1, 0.15}) {
      CHECK(ed_min_samples(snr, t, t) == min_samples_oracle(snr, t, t));
      CHECK(ed_min_samples(snr, t, 0.5 * t) == min_samples_oracle(snr, t, 0.5 * t));
    }
  }
  CHECK_THROWS_AS(ed_min_samples(0.0, 0.1, 0.1), DomainError);
  CHECK_THROWS_AS(ed_min_samples(1.0, 0.0, 0.1), DomainError);
  CHECK_THROWS_AS(ed_min_samples(1.0, 0.1, 1.0), DomainError);
}

TEST_CASE("ed_min_samples properties") {
  const double snr = std::pow(10.0, -0.5);
  int prev = ed_min_samples(snr, 0.01, 0.05);
  for (double a = 0.02; a < 0.5; a += 0.01) {
    const int m = ed_min_samples(snr, a, 0.05);
    CHECK(m <= prev);
    prev = m;
  }
  prev = ed_min_samples(snr, 0.05, 0.01);
  for (double b = 0.02; b < 0.5; b += 0.01) {
    const int m = ed_min_samples(snr, 0.05, b);
    CHECK(m <= prev);
    prev = m;
  }
  // Low-SNR growth is O(snr^-2).
  for (double db : {-15.0, -20.0}) {
    const double s1 = std::pow(10.0, db / 10.0);
    const double s2 = s1 / 10.0;
    const double ratio = double(ed_min_samples(s2, 0.1, 0.1)) / ed_min_samples(s1, 0.1, 0.1);
    CHECK(ratio == doctest::Approx(100.0).epsilon(0.10));
  }
}

TEST_CASE("ed_error_probs") {
  EnergyDetectorConfig centered{50, 100.0, 1.0};
  CHECK(double(ed_error_probs(centered, 1.0).alpha) == doctest::Approx(0.5).epsilon(1e-14));

  const EnergyDetectorConfig t1 = EnergyDetectorConfig::for_targets(40, 0.011, 1.0);
  const ErrorPair e = ed_error_probs(t1, 1.0);
  CHECK(double(e.alpha) == doctest::Approx(0.011).epsilon(1e-10));
  {
    const boost::math::normal_distribution<double> z;
    const double m = 40, g = t1.threshold_normalized;
    const double beta = boost::math::cdf(z, (g - 2 * m * 2.0) / std::sqrt(4 * m * 3.0));
    CHECK(double(e.beta) == doctest::Approx(beta).epsilon(1e-12));
  }

  // alpha is fixed by the threshold alone
  const EnergyDetectorConfig d = EnergyDetectorConfig::for_targets(4450, 0.15, std::pow(10.0, -1.5));
  const double a0 = ed_error_probs(d, 0.0).alpha;
  double prev_beta = 1.0;
  for (double db = -20.0; db <= -10.0; db += 0.5) {
    const ErrorPair p = ed_error_probs(d, std::pow(10.0, db / 10.0));
    CHECK(double(p.alpha) == a0);
    CHECK(double(p.beta) <= prev_beta);
    prev_beta = p.beta;
  }
  CHECK(std::abs(double(ed_error_probs(d, std::pow(10.0, -1.2)).beta) - 0.0012) <= 3e-4);

  // normal limit against the exact chi-square law at large m
  const ErrorPair ex = ed_error_probs_exact(d, std::pow(10.0, -1.5));
  const ErrorPair cl = ed_error_probs(d, std::pow(10.0, -1.5));
  CHECK(std::abs(double(ex.alpha) - double(cl.alpha)) < 0.01);
  CHECK(std::abs(double(ex.beta) - double(cl.beta)) < 0.01);
}

TEST_CASE("sprt_increment") {
  for (double v : {0.0, 0.3, 5.0, 1e4}) CHECK(sprt_increment(v, 0.0) == 0.0);
  CHECK(sprt_increment(0.0, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(sprt_increment(4.0, 2.0) ==
        doctest::Approx(-1.0 + std::log(std::cyl_bessel_i(0.0, std::sqrt(8.0)))).epsilon(1e-13));
  CHECK(std::isfinite(sprt_increment(1e8, 2.0)));
  CHECK_THROWS_AS(sprt_increment(-1.0, 2.0), DomainError);

  std::mt19937_64 rng(41);
  std::exponential_distribution<double> ex(0.5);
  const int n = 1'000'000;
  double s0 = 0.0, s1 = 0.0;
  for (int i = 0; i < n; ++i) {
    s0 += sprt_increment(ex(rng), 2.0);
    s1 += sprt_increment(noncentral_draw(rng, 2.0), 2.0);
  }
  CHECK(s0 / n < 0.0);
  CHECK(s1 / n > 0.0);
}

TEST_CASE("Wald thresholds and deterministic runs") {
  const SprtConfig w = SprtConfig::wald(0.05, 0.05, 2.0);
  CHECK(w.a_l == doctest::Approx(std::log(0.05 / 0.95)).epsilon(1e-15));
  CHECK(w.b_l == doctest::Approx(std::log(0.95 / 0.05)).epsilon(1e-15));
  CHECK_THROWS_AS(SprtConfig::wald(0.0, 0.1, 2.0), DomainError);
  CHECK_THROWS_AS(SprtConfig::wald(0.1, 0.1, 0.0), ConfigError);

  const SprtOutcome z = sprt_run(w, [] { return 0.0; });
  CHECK(z.verdict == Verdict::accept_h0);
  CHECK(z.samples == static_cast<std::int64_t>(std::ceil(-w.a_l / 1.0)));

  SprtConfig capped = w;
  capped.max_samples = 50;
  // energies with zero increment never decide
  const double v0 = [] {
    double lo = 0.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (sprt_increment(mid, 2.0) < 0.0 ? lo : hi) = mid;
    }
    return lo;
  }();
  CHECK_THROWS_AS(sprt_run(capped, [&] { return 0.5 * v0; }), ContractError);
}

TEST_CASE("SPRT error rates respect the Wald targets") {
  const double lambda = 2.0;
  const double target = 0.05;
  const SprtConfig w = SprtConfig::wald(target, target, lambda, 1.0);
  std::mt19937_64 rng(97);
  std::exponential_distribution<double> ex(1.0);  // raw energy, noise power 1
  const int T = 40000;
  int fa = 0, miss = 0;
  for (int t = 0; t < T; ++t) {
    if (sprt_run(w, [&] { return ex(rng); }).verdict == Verdict::reject_h0) ++fa;
    if (sprt_run(w, [&] { return 0.5 * noncentral_draw(rng, lambda); }).verdict ==
        Verdict::accept_h0) {
      ++miss;
    }
  }
  const double sigma = std::sqrt(target * (1 - target) / T);
  CHECK(double(fa) / T <= target + 3 * sigma);
  CHECK(double(miss) / T <= target + 3 * sigma);
}
