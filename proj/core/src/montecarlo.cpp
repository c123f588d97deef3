// SPDX-License-Identifier: Apache-2.0
#include "ssct/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

#include "ssct/baselines.hpp"
#include "ssct/detector.hpp"
#include "ssct/errors.hpp"

namespace ssct {

std::string_view to_string(Hypothesis h) { return h == Hypothesis::h0 ? "H0" : "H1"; }

EstimateCI EstimateCI::proportion(std::int64_t hits, std::int64_t trials) {
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
}

EstimateCI EstimateCI::mean(double sum, double sum_sq, std::int64_t trials) {
  const double t = static_cast<double>(trials);
  const double m = sum / t;
  const double var = std::max(0.0, (sum_sq - t * m * m) / (t - 1.0));
  return {m, std::sqrt(var / t), trials};
}

namespace {

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

struct Tally {
  std::int64_t errors = 0;
  std::int64_t truncated = 0;
  std::uint64_t n_sum = 0;
  std::uint64_t n_sq = 0;
};

}  // namespace

EnergySource::EnergySource(const SimSpec& spec, std::uint64_t chunk)
    : hyp_(spec.hypothesis),
      noise_power_(spec.cfg.noise_power),
      sd_(std::sqrt(0.5 * spec.cfg.noise_power)),
      rng_(chunk_rng(spec.seed, chunk)) {
  double acc = 0.0;
  for (const auto& c : spec.model.components()) {
    // lambda = 2 |s|^2 / sigma_w^2
    amp_.push_back(std::sqrt(0.5 * c.lambda * spec.cfg.noise_power));
    acc += c.weight;
    cum_.push_back(acc);
  }
}

double gen_energy(const SimSpec& spec, std::uint64_t i) { return EnergySource(spec, i).next(); }

int thread_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("SSCT_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return hw;
}

namespace {

struct Episode {
  bool error = false;
  bool truncated = false;
  std::int64_t n = 0;
};

// Runs spec.trials episodes over the chunked streams; `episode` draws from
// the source it is given and reports the outcome.
template <class F>
SimResult run_trials(const SimSpec& spec, F episode) {
  if (spec.trials < 10'000) throw ContractError("Monte Carlo estimates need at least 1e4 trials");
  const std::int64_t chunks = (spec.trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
  const int workers = static_cast<int>(std::min<std::int64_t>(thread_count(), chunks));

  std::atomic<std::int64_t> next_chunk{0};
  std::vector<Tally> tallies(static_cast<std::size_t>(workers));
  auto work = [&](Tally& t) {
    for (;;) {
      const std::int64_t k = next_chunk.fetch_add(1);
      if (k >= chunks) return;
      const std::int64_t begin = k * kTrialsPerChunk;
      const std::int64_t end = std::min(spec.trials, begin + kTrialsPerChunk);
      EnergySource src(spec, static_cast<std::uint64_t>(k));
      for (std::int64_t trial = begin; trial < end; ++trial) {
        const Episode e = episode(src);
        if (e.error) ++t.errors;
        if (e.truncated) ++t.truncated;
        const auto n = static_cast<std::uint64_t>(e.n);
        t.n_sum += n;
        t.n_sq += n * n;
      }
    }
  };
  if (workers == 1) {
    work(tallies[0]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, std::ref(tallies[w]));
    for (auto& th : pool) th.join();
  }
  Tally total;
  for (const auto& t : tallies) {
    total.errors += t.errors;
    total.truncated += t.truncated;
    total.n_sum += t.n_sum;
    total.n_sq += t.n_sq;
  }
  SimResult r;
  r.error_rate = EstimateCI::proportion(total.errors, spec.trials);
  r.t_p = EstimateCI::proportion(total.truncated, spec.trials);
  r.asn = EstimateCI::mean(static_cast<double>(total.n_sum), static_cast<double>(total.n_sq),
                           spec.trials);
  return r;
}

}  // namespace

SimResult estimate(const SimSpec& spec) {
  spec.cfg.validate();
  const Verdict error_verdict =
      spec.hypothesis == Hypothesis::h0 ? Verdict::reject_h0 : Verdict::accept_h0;
  return run_trials(spec, [&](EnergySource& src) {
    SsctDetector det(spec.cfg);
    Decision d;
    do {
      d = det.step(src.next());
    } while (!d.terminal());
    return Episode{d.verdict == error_verdict, d.n_s == spec.cfg.M, d.n_s};
  });
}

SimResult estimate_sprt(const SprtConfig& sprt, const SimSpec& spec) {
  sprt.validate();
  const Verdict error_verdict =
      spec.hypothesis == Hypothesis::h0 ? Verdict::reject_h0 : Verdict::accept_h0;
  return run_trials(spec, [&](EnergySource& src) {
    const SprtOutcome o = sprt_run(sprt, [&] { return src.next(); });
    return Episode{o.verdict == error_verdict, false, o.samples};
  });
}

SimResult estimate_energy_detector(const EnergyDetectorConfig& ed, const SimSpec& spec) {
  if (ed.m < 1) throw ContractError("energy detector needs m >= 1");
  const double scale = 2.0 / spec.cfg.noise_power;
  const bool h0 = spec.hypothesis == Hypothesis::h0;
  return run_trials(spec, [&](EnergySource& src) {
    double t = 0.0;
    for (int i = 0; i < ed.m; ++i) t += src.next();
    const bool reject = scale * t > ed.threshold_normalized;
    return Episode{h0 ? reject : !reject, false, ed.m};
  });
}

}  // namespace ssct
