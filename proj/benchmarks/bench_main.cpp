// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <benchmark/benchmark.h>

#include "ssct/baselines.hpp"
#include "ssct/montecarlo.hpp"
#include "ssct/performance.hpp"
#include "ssct/recursive_integrals.hpp"
#include "ssct/special_functions.hpp"

using namespace ssct;

namespace {

SsctConfig design_5db(int M) {
  SsctConfig c = SsctConfig::symmetric(35.32, -5.69, M, std::pow(10.0, -0.5));
  c.delta_bar = 2.316;
  return c;
}

void BM_MarcumCdf(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(noncentral_chisq2_cdf(x, 2.0));
    x = x < 50.0 ? x + 0.37 : 0.1;
  }
}
BENCHMARK(BM_MarcumCdf);

void BM_VolumeRecursion(benchmark::State& state) {
  const SsctConfig c = design_5db(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const IntegralEngine<double> e(c);
    benchmark::DoNotOptimize(e.volume(c.M - 1).value);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VolumeRecursion)->RangeMultiplier(2)->Range(40, 320)->Complexity();

void BM_BandIntegrals(benchmark::State& state) {
  const SsctConfig c = design_5db(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const IntegralEngine<double> e(c);
    double s = 0.0;
    for (int N = 1; N < c.M; ++N) s += std::ldexp(e.j_band(N, 0.5).value, -N);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_BandIntegrals)->Arg(140)->Arg(280)->Unit(benchmark::kMillisecond);

void BM_ExactH0Extended(benchmark::State& state) {
  const SsctConfig c = design_5db(140);
  for (auto _ : state) benchmark::DoNotOptimize(exact_h0(c, Precision::extended).alpha.value);
}
BENCHMARK(BM_ExactH0Extended)->Unit(benchmark::kMillisecond);

void BM_GridRun(benchmark::State& state) {
  const SsctConfig c = design_5db(140);
  const SignalModel m = SignalModel::constant_modulus(c.snr_m);
  const GridRecursion g(c, m, static_cast<int>(state.range(0)), Quadrature::simpson);
  for (auto _ : state) benchmark::DoNotOptimize(g.run(c.gamma_bar, c.M).back());
}
BENCHMARK(BM_GridRun)->Arg(355)->Arg(709)->Arg(1417)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  SimSpec s;
  s.cfg = design_5db(140);
  s.hypothesis = state.range(0) == 0 ? Hypothesis::h0 : Hypothesis::h1;
  s.model = SignalModel::constant_modulus(s.cfg.snr_m);
  s.trials = 20'000;
  for (auto _ : state) benchmark::DoNotOptimize(estimate(s).asn.point);
  state.SetItemsProcessed(state.iterations() * s.trials);
}
BENCHMARK(BM_MonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SprtIncrement(benchmark::State& state) {
  double v = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sprt_increment(v, 0.63));
    v = v < 20.0 ? v + 0.11 : 0.0;
  }
}
BENCHMARK(BM_SprtIncrement);

}  // namespace
BENCHMARK_MAIN();
