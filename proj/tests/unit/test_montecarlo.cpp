// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "ssct/errors.hpp"
#include "ssct/montecarlo.hpp"
#include "ssct/performance.hpp"

using namespace ssct;

namespace {

const double kSnr5 = std::pow(10.0, -0.5);

SsctConfig table1_5db(double noise_power = 1.0) {
  SsctConfig c = SsctConfig::symmetric(35.32, -5.69, 140, kSnr5, noise_power);
  c.delta_bar = 2.316;
  return c;
}

SimSpec spec_for(const SsctConfig& c, Hypothesis h, std::int64_t trials, std::uint64_t seed) {
  SimSpec s;
  s.cfg = c;
  s.hypothesis = h;
  s.trials = trials;
  s.seed = seed;
  s.model = SignalModel::constant_modulus(c.snr_m);
  return s;
}

struct Moments {
  double mean = 0.0, var = 0.0;
  long n = 0;
};

Moments moments(const std::vector<double>& x) {
  Moments m;
  m.n = static_cast<long>(x.size());
  for (double v : x) m.mean += v;
  m.mean /= m.n;
  for (double v : x) m.var += (v - m.mean) * (v - m.mean);
  m.var /= (m.n - 1);
  return m;
}

bool same(const EstimateCI& a, const EstimateCI& b) {
  return a.point == b.point && a.std_err == b.std_err && a.trials == b.trials;
}

class ThreadsEnv {
 public:
  explicit ThreadsEnv(const char* v) {
    if (const char* old = std::getenv("SSCT_THREADS")) saved_ = old;
    setenv("SSCT_THREADS", v, 1);
  }
  ~ThreadsEnv() {
    if (saved_.empty()) {
      unsetenv("SSCT_THREADS");
    } else {
      setenv("SSCT_THREADS", saved_.c_str(), 1);
    }
  }

 private:
  std::string saved_;
};

}  // namespace

TEST_CASE("energy moments") {
  const double sigma2 = 1.7;
  const int n = 1'000'000;
  SUBCASE("H0") {
    EnergySource src(spec_for(table1_5db(sigma2), Hypothesis::h0, 10'000, 5), 0);
    std::vector<double> e(n), v(n);
    for (int i = 0; i < n; ++i) {
      e[i] = src.next();
      v[i] = 2.0 * e[i] / sigma2;
    }
    const Moments me = moments(e), mv = moments(v);
    CHECK(std::abs(me.mean - sigma2) <= 3 * std::sqrt(me.var / n));
    // Exp(1/2): central fourth moment 144, so var(s^2) ~ (144 - 16) / n
    CHECK(std::abs(mv.var - 4.0) <= 3 * std::sqrt(128.0 / n));
  }
  SUBCASE("H1 QPSK") {
    const double snr = 0.8;
    SimSpec s = spec_for(table1_5db(sigma2), Hypothesis::h1, 10'000, 6);
    s.model = SignalModel::constant_modulus(snr);
    EnergySource src(s, 0);
    std::vector<double> e(n);
    for (auto& x : e) x = src.next();
    const Moments me = moments(e);
    CHECK(std::abs(me.mean - sigma2 * (1.0 + snr)) <= 3 * std::sqrt(me.var / n));
  }
  SUBCASE("H1 64-QAM") {
    const double snr = 0.8;
    SimSpec s = spec_for(table1_5db(sigma2), Hypothesis::h1, 10'000, 7);
    s.model = SignalModel::qam64(snr);
    EnergySource src(s, 0);
    std::vector<double> e(n);
    for (auto& x : e) x = src.next();
    const Moments me = moments(e);
    CHECK(std::abs(me.mean - sigma2 * (1.0 + snr)) <= 3 * std::sqrt(me.var / n));
  }
  SUBCASE("gen_energy is a pure function of (spec, i)") {
    const SimSpec s = spec_for(table1_5db(), Hypothesis::h1, 10'000, 9);
    for (std::uint64_t i = 0; i < 50; ++i) CHECK(gen_energy(s, i) == gen_energy(s, i));
    CHECK(gen_energy(s, 0) != gen_energy(s, 1));
    SimSpec t = s;
    t.seed = 10;
    CHECK(gen_energy(s, 0) != gen_energy(t, 0));
  }
}

TEST_CASE("trial guard") {
  CHECK_THROWS_AS(estimate(spec_for(table1_5db(), Hypothesis::h0, 9'999, 1)), ContractError);
  CHECK_NOTHROW(estimate(spec_for(table1_5db(), Hypothesis::h0, 10'000, 1)));
}

TEST_CASE("results do not depend on the thread count") {
  const SimSpec s = spec_for(table1_5db(), Hypothesis::h1, 30'000, 77);
  SimResult one, four;
  {
    ThreadsEnv env("1");
    one = estimate(s);
  }
  {
    ThreadsEnv env("4");
    four = estimate(s);
  }
  CHECK(same(one.error_rate, four.error_rate));
  CHECK(same(one.asn, four.asn));
  CHECK(same(one.t_p, four.t_p));
  const SimResult again = estimate(s);
  CHECK(same(one.asn, again.asn));

  // the first chunks of a larger run are the same streams
  SimSpec longer = s;
  longer.trials = 2 * s.trials;
  const SimResult l = estimate(longer);
  CHECK(std::abs(l.asn.point - one.asn.point) <= 3 * std::hypot(l.asn.std_err, one.asn.std_err));
}

TEST_CASE("normalized statistic is asymptotically N(2M, 4M) under H0") {
  const SsctConfig c = table1_5db();
  const int M = c.M;
  const int T = 400'000;
  std::vector<double> xi(T);
  for (int k = 0; k * 1024 < T; ++k) {
    EnergySource src(spec_for(c, Hypothesis::h0, 10'000, 123), static_cast<std::uint64_t>(k));
    for (int t = k * 1024; t < std::min(T, (k + 1) * 1024); ++t) {
      double s = 0.0;
      for (int i = 0; i < M; ++i) s += 2.0 * src.next() / c.noise_power;
      xi[t] = s;
    }
  }
  const Moments m = moments(xi);
  CHECK(m.mean == doctest::Approx(2.0 * M).epsilon(0.01));
  CHECK(m.var == doctest::Approx(4.0 * M).epsilon(0.01));
}

TEST_CASE("simulated alpha and beta match the analytic values at -5 dB") {
  const SsctConfig c = table1_5db();
  const std::int64_t T = 200'000;
  const SimResult h0 = estimate(spec_for(c, Hypothesis::h0, T, 2));
  const SimResult h1 = estimate(spec_for(c, Hypothesis::h1, T, 3));
  const H0Summary ex = exact_h0(c);
  CHECK(std::abs(h0.error_rate.point - ex.alpha.value) <= 3 * h0.error_rate.std_err);
  CHECK(std::abs(h0.asn.point - ex.asn.value) <= 3 * h0.asn.std_err);
  CHECK(std::abs(h0.t_p.point - ex.t_p.value) <= 3 * h0.t_p.std_err);
  const H1Summary g = evaluate_h1(c, SignalModel::constant_modulus(c.snr_m));
  CHECK(std::abs(h1.error_rate.point - g.beta.value) <= 3 * h1.error_rate.std_err + g.beta.tol);
  CHECK(std::abs(h1.asn.point - g.asn.value) <= 3 * h1.asn.std_err + g.asn.tol);
}

TEST_CASE("truncation table row M = 200") {
  SsctConfig c{-26.40, 20.85, -6.32, 2.316, 200, kSnr5, 1.0};
  const std::int64_t T = 100'000;
  const SimResult h0 = estimate(spec_for(c, Hypothesis::h0, T, 11));
  const SimResult h1 = estimate(spec_for(c, Hypothesis::h1, T, 12));
  const double asn = 0.5 * (h0.asn.point + h1.asn.point);
  const double asn_se = 0.5 * std::hypot(h0.asn.std_err, h1.asn.std_err);
  const double tp = 0.5 * (h0.t_p.point + h1.t_p.point);
  const double tp_se = 0.5 * std::hypot(h0.t_p.std_err, h1.t_p.std_err);
  // printed values carry one decimal
  CHECK(std::abs(asn - 71.2) <= 3 * asn_se + 0.05);
  CHECK(std::abs(tp - 0.030) <= 3 * tp_se + 0.0005);
}

TEST_CASE("SPRT and energy detector on the shared streams") {
  const SsctConfig c = table1_5db();
  const SprtConfig w = SprtConfig::wald(0.055, 0.046, 2.0 * c.snr_m, c.noise_power);
  const SimResult s0 = estimate_sprt(w, spec_for(c, Hypothesis::h0, 20'000, 4));
  CHECK(s0.t_p.point == 0.0);
  CHECK(s0.error_rate.point <= 0.055 + 3 * s0.error_rate.std_err);

  const auto ed = EnergyDetectorConfig::for_targets(140, 0.055, c.snr_m);
  const SimResult e0 = estimate_energy_detector(ed, spec_for(c, Hypothesis::h0, 50'000, 5));
  const SimResult e1 = estimate_energy_detector(ed, spec_for(c, Hypothesis::h1, 50'000, 6));
  CHECK(e0.asn.point == 140.0);
  const ErrorPair exact = ed_error_probs_exact(ed, c.snr_m);
  CHECK(std::abs(e0.error_rate.point - double(exact.alpha)) <= 3 * e0.error_rate.std_err);
  CHECK(std::abs(e1.error_rate.point - double(exact.beta)) <= 3 * e1.error_rate.std_err);
}
