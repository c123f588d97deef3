// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

#include "ssct/baselines.hpp"
#include "ssct/boundary.hpp"
#include "ssct/signal_model.hpp"

namespace ssct {

enum class Hypothesis { h0, h1 };

std::string_view to_string(Hypothesis h);

struct SimSpec {
  std::int64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  Hypothesis hypothesis = Hypothesis::h0;
  SignalModel model = SignalModel::constant_modulus(1.0);
  SsctConfig cfg;
};

/// A point estimate with its standard error.
struct EstimateCI {
  double point = 0.0;
  double std_err = 0.0;
  std::int64_t trials = 0;

  static EstimateCI proportion(std::int64_t hits, std::int64_t trials);
  static EstimateCI mean(double sum, double sum_sq, std::int64_t trials);
};

struct SimResult {
  EstimateCI error_rate;   // alpha under H0, beta under H1
  EstimateCI asn;          // E(N_s)
  EstimateCI t_p;          // P(N_s = M)
};

/// Trials are grouped in fixed chunks; chunk k draws from mt19937_64 seeded
/// with seed_seq{seed, k}. Results are bit-identical for any thread count.
inline constexpr std::int64_t kTrialsPerChunk = 1024;

/// Received-sample energies |h s + w|^2 (h = 1) for one hypothesis.
class EnergySource {
 public:
  EnergySource(const SimSpec& spec, std::uint64_t chunk);

  double next() {
    if (hyp_ == Hypothesis::h0) return noise_power_ * exp_(rng_);
    double amp = amp_.front();
    if (amp_.size() > 1) {
      const double u = unif_(rng_);
      std::size_t k = 0;
      while (k + 1 < cum_.size() && u >= cum_[k]) ++k;
      amp = amp_[k];
    }
    const double x = amp + sd_ * norm_(rng_);
    const double y = sd_ * norm_(rng_);
    return x * x + y * y;
  }

 private:
  Hypothesis hyp_;
  double noise_power_;
  double sd_;                   // per-dimension noise standard deviation
  std::vector<double> amp_;     // |s| per mixture component
  std::vector<double> cum_;     // cumulative weights
  std::mt19937_64 rng_;
  boost::random::exponential_distribution<double> exp_{1.0};
  boost::random::normal_distribution<double> norm_{0.0, 1.0};
  boost::random::uniform_01<double> unif_;
};

/// One energy draw from a fresh stream (chunk index i).
double gen_energy(const SimSpec& spec, std::uint64_t i);

/// Worker count: SSCT_THREADS if set (>= 1), else hardware concurrency.
int thread_count();

/// Runs spec.trials detector episodes. Throws ContractError for trials < 1e4.
SimResult estimate(const SimSpec& spec);

/// Non-truncated SPRT episodes on the same streams (t_p is always 0).
SimResult estimate_sprt(const SprtConfig& sprt, const SimSpec& spec);

/// Fixed-size energy detector on the same streams; asn is m.
SimResult estimate_energy_detector(const EnergyDetectorConfig& ed, const SimSpec& spec);

}  // namespace ssct
