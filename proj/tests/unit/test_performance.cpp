// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "ssct/errors.hpp"
#include "ssct/montecarlo.hpp"
#include "ssct/performance.hpp"

using namespace ssct;
using boost::math::quadrature::gauss_kronrod;

namespace {

const double kSnr5 = std::pow(10.0, -0.5);

SsctConfig table1_0db() { return SsctConfig::symmetric(27.0, -8.5, 40, 1.0); }

SsctConfig table1_5db() {
  SsctConfig c = SsctConfig::symmetric(35.32, -5.69, 140, kSnr5);
  c.delta_bar = 2.316;
  return c;
}

SimSpec sim(const SsctConfig& c, Hypothesis h, const SignalModel& m, std::int64_t trials,
            std::uint64_t seed) {
  SimSpec s;
  s.cfg = c;
  s.hypothesis = h;
  s.model = m;
  s.trials = trials;
  s.seed = seed;
  return s;
}

double pdf_integral(const SignalModel& m, const SsctConfig& c) {
  auto f = [&](double u) { return h1_increment_pdf(u, m, c); };
  double err = 0.0;
  double s = 0.0;
  const double lo = -c.delta_bar;
  const double edges[] = {lo, lo + 1.0, lo + 10.0, lo + 60.0, lo + 400.0};
  for (int i = 0; i + 1 < 5; ++i) {
    s += gauss_kronrod<double, 31>::integrate(f, edges[i], edges[i + 1], 15, 1e-13, &err);
  }
  return s;
}

std::vector<SsctConfig> random_configs(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<SsctConfig> out;
  while (static_cast<int>(out.size()) < n) {
    SsctConfig c;
    c.snr_m = 0.3 + 1.2 * u(rng);
    c.delta_bar = 2.0 + c.snr_m * (0.3 + 0.6 * u(rng));
    c.b_bar = 5.0 + 15.0 * u(rng);
    c.a_bar = -(5.0 + 15.0 * u(rng));
    c.gamma_bar = 0.5 * c.a_bar + u(rng) * 0.5 * (c.b_bar - c.a_bar);
    c.M = 5 + static_cast<int>(56 * u(rng));
    c.noise_power = 1.0;
    out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("false alarm probability") {
  SUBCASE("table configurations") {
    CHECK(std::abs(double(false_alarm_exact(table1_0db())) - 0.011) <= 0.001);
    CHECK(std::abs(double(false_alarm_exact(table1_5db())) - 0.055) <= 0.001);
  }
  SUBCASE("two-sample closed form") {
    // a_1 = 1, b_1 = 6.5, gamma_bar_2 = 5: alpha = e^{-b_1/2} + int_{a_1}^{b_1} e^{-x/2}/2
    // e^{-max(0, 5 - x)/2} dx = 3 e^{-5/2}
    const SsctConfig c{-1.5, 4.0, 0.0, 2.5, 2, 1.0, 1.0};
    const H0Summary h = exact_h0(c);
    CHECK(h.alpha.value == doctest::Approx(3.0 * std::exp(-2.5)).epsilon(1e-12));
    // E_H0(N_s) = 1 + P(a_1 < xi_1 < b_1)
    CHECK(h.asn.value == doctest::Approx(1.0 + std::exp(-0.5) - std::exp(-3.25)).epsilon(1e-12));
    CHECK(h.t_p.value == doctest::Approx(std::exp(-0.5) - std::exp(-3.25)).epsilon(1e-12));
    const SimResult r = estimate(sim(c, Hypothesis::h0, SignalModel::constant_modulus(1.0),
                                     1'000'000, 8));
    CHECK(std::abs(r.asn.point - h.asn.value) <= 3 * r.asn.std_err);
    CHECK(std::abs(r.error_rate.point - h.alpha.value) <= 3 * r.error_rate.std_err);
  }
  SUBCASE("native precision refuses long designs") {
    SsctConfig c = SsctConfig::symmetric(69.30, -4.0, 730, 0.1);
    c.delta_bar = 2.1;
    try {
      (void)exact_h0(c, Precision::native);
      FAIL("expected InstabilityError");
    } catch (const InstabilityError& e) {
      CHECK(e.certified_n() >= 1);
      CHECK(e.certified_n() < c.M);
    }
  }
}

TEST_CASE("H1 increment density") {
  const SsctConfig c = table1_5db();
  const SignalModel q = SignalModel::constant_modulus(kSnr5);
  CHECK(h1_increment_pdf(-c.delta_bar, q, c) == 0.0);
  CHECK(h1_increment_pdf(-c.delta_bar - 1.0, q, c) == 0.0);
  const SignalModel noise = SignalModel::mixture({{0.0, 1.0}});
  for (double u : {-2.0, 0.0, 3.7, 40.0}) {
    CHECK(h1_increment_pdf(u, noise, c) ==
          doctest::Approx(0.5 * std::exp(-(u + c.delta_bar) / 2)).epsilon(1e-14));
  }
  for (const SignalModel& m : {q, SignalModel::qam64(kSnr5), SignalModel::qam64(10.0),
                               SignalModel::mixture({{0.5, 0.3}, {6.0, 0.7}})}) {
    CHECK(std::abs(pdf_integral(m, c) - 1.0) <= 1e-8);
    for (double x : {-1.0, 0.5, 4.0}) {
      const double cdf = gauss_kronrod<double, 31>::integrate(
          [&](double u) { return h1_increment_pdf(u, m, c); }, -c.delta_bar, x, 15, 1e-13);
      CHECK(h1_increment_cdf(x, m, c) == doctest::Approx(cdf).epsilon(1e-9));
    }
  }
}

TEST_CASE("grid recursion against direct quadrature") {
  const SsctConfig c{-6.0, 5.0, -1.0, 2.6, 10, 1.0, 1.0};
  const SignalModel m = SignalModel::constant_modulus(1.0);
  const GridRecursion g(c, m, 801, Quadrature::simpson);
  const auto G = g.run(c.gamma_bar, 2);
  CHECK(G[0] == doctest::Approx(h1_increment_cdf(c.gamma_bar, m, c)).epsilon(1e-12));
  // G_2(0) = F(a) + int_a^b F(gamma - y) p(y) dy
  const double two = h1_increment_cdf(c.a_bar, m, c) +
                     gauss_kronrod<double, 31>::integrate(
                         [&](double y) {
                           return h1_increment_cdf(c.gamma_bar - y, m, c) *
                                  h1_increment_pdf(y, m, c);
                         },
                         std::max(c.a_bar, -c.delta_bar), c.b_bar, 15, 1e-12);
  CHECK(G[1] == doctest::Approx(two).epsilon(1e-6));
}

TEST_CASE("grid properties") {
  for (const SsctConfig& c : {table1_0db(), table1_5db()}) {
    const SignalModel m = SignalModel::constant_modulus(c.snr_m);
    const GridSpec spec;
    const int n = spec.resolve_points(c);
    const GridRecursion coarse(c, m, n, Quadrature::simpson);
    const GridRecursion fine(c, m, 2 * n - 1, Quadrature::simpson);
    const auto bc = coarse.run(c.gamma_bar, c.M);
    const auto bf = fine.run(c.gamma_bar, c.M);
    CHECK(std::abs(bc.back() - bf.back()) < 1e-4);
    CHECK(coarse.monotonicity_violation() <= 1e-8);
    CHECK(fine.monotonicity_violation() <= 1e-8);

    const auto curves = grid_acceptance_curves(c, m, spec, {c.b_bar, c.a_bar}, c.M);
    for (int k = 0; k < c.M; ++k) {
      const double d = curves[0].g0[k] - curves[1].g0[k];
      CHECK(d >= -1e-12);
      CHECK(d <= 1.0 + 1e-12);
    }
  }
  GridSpec bad;
  bad.points = 200;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.points = 203;
  bad.max_points = 100;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("miss detection and ASN at the table configurations") {
  const GridSpec grid;
  SUBCASE("0 dB") {
    const SsctConfig c = table1_0db();
    const SignalModel m = SignalModel::constant_modulus(1.0);
    CHECK(std::abs(double(miss_detection_grid(c, m, grid, c.gamma_bar)) - 0.008) <= 0.001);
    EvalOptions o;
    o.m_ed_min = 40;
    const PerformanceReport r = evaluate(c, m, o);
    CHECK(std::abs(r.asn_mixed.value - 26.0) <= 1.0);
    CHECK(r.alpha.method == Method::exact);
    CHECK(r.beta.method == Method::grid);
    CHECK(r.efficiency == doctest::Approx(1.0 - r.asn_mixed.value / 40.0));
  }
  SUBCASE("-5 dB") {
    const SsctConfig c = table1_5db();
    const PerformanceReport r = asn(c, SignalModel::constant_modulus(kSnr5), grid);
    CHECK(std::abs(r.asn_mixed.value - 96.0) <= 2.0);
    CHECK(r.asn_mixed.value == doctest::Approx(0.5 * (r.asn_h0.value + r.asn_h1.value)));
    for (double v : {r.asn_h0.value, r.asn_h1.value}) {
      CHECK(v >= 1.0);
      CHECK(v <= c.M);
    }
    CHECK(std::abs(double(miss_detection_grid(c, SignalModel::qam64(kSnr5), grid, c.gamma_bar)) -
                   0.050) <= 0.002);
  }
  SUBCASE("priors") {
    CHECK_THROWS_AS((Priors{0.3, 0.6}.validate()), ConfigError);
    CHECK_THROWS_AS((Priors{-0.1, 1.1}.validate()), ConfigError);
    const SsctConfig c = table1_0db();
    const PerformanceReport r = asn(c, SignalModel::constant_modulus(1.0), grid, {0.2, 0.8});
    CHECK(r.asn_mixed.value ==
          doctest::Approx(0.2 * r.asn_h0.value + 0.8 * r.asn_h1.value).epsilon(1e-12));
  }
}

TEST_CASE("efficiency") {
  CHECK(efficiency(95.0, 140) == doctest::Approx(0.3214).epsilon(1e-3));
  CHECK(efficiency(140.0, 140) == 0.0);
  CHECK(efficiency(3154.0, 4450) == doctest::Approx(0.2912).epsilon(1e-3));
  CHECK(efficiency(200.0, 140) < 0.0);
  CHECK_THROWS(efficiency(10.0, 0));
}

TEST_CASE("analytic values agree with simulation on random configurations") {
  const std::int64_t T = 200'000;
  std::uint64_t seed = 1000;
  for (const SsctConfig& c : random_configs(10, 4242)) {
    CAPTURE(c.a_bar);
    CAPTURE(c.b_bar);
    CAPTURE(c.gamma_bar);
    CAPTURE(c.delta_bar);
    CAPTURE(c.M);
    CAPTURE(c.snr_m);
    const H0Summary h0 = exact_h0(c);
    const SimResult s0 = estimate(sim(c, Hypothesis::h0, SignalModel::constant_modulus(c.snr_m),
                                      T, ++seed));
    CHECK(std::abs(s0.error_rate.point - h0.alpha.value) <= 3 * s0.error_rate.std_err + 1e-9);
    CHECK(std::abs(s0.asn.point - h0.asn.value) <= 3 * s0.asn.std_err + 1e-9);

    for (const SignalModel& m :
         {SignalModel::constant_modulus(c.snr_m),
          SignalModel::mixture({{0.6 * c.snr_m, 0.5}, {3.4 * c.snr_m, 0.5}})}) {
      const H1Summary h1 = evaluate_h1(c, m);
      const SimResult s1 = estimate(sim(c, Hypothesis::h1, m, T, ++seed));
      CHECK(std::abs(s1.error_rate.point - h1.beta.value) <=
            3 * s1.error_rate.std_err + h1.beta.tol);
      CHECK(std::abs(s1.asn.point - h1.asn.value) <= 3 * s1.asn.std_err + h1.asn.tol);
    }
  }
}
