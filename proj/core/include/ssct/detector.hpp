// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>

#include "ssct/boundary.hpp"
#include "ssct/errors.hpp"

namespace ssct {

enum class Verdict { reject_h0, accept_h0, continue_sampling };

std::string_view to_string(Verdict v);

struct Decision {
  Verdict verdict = Verdict::continue_sampling;
  int n_s = 0;              // samples consumed so far
  double statistic = 0.0;   // Lambda_N in energy units

  bool terminal() const { return verdict != Verdict::continue_sampling; }
};

/// Online truncated test on Lambda_N = sum_i (|r_i|^2 - Delta), raw energy units.
///
/// For N <= M-1: reject H0 when Lambda_N >= b, accept when Lambda_N <= a,
/// otherwise continue. At N = M: reject iff Lambda_M >= gamma.
class SsctDetector {
 public:
  explicit SsctDetector(const SsctConfig& cfg)
      : a_(cfg.a()), b_(cfg.b()), gamma_(cfg.gamma()), delta_(cfg.delta()), M_(cfg.M) {
    cfg.validate();
  }

  Decision step(double energy) {
    if (terminated_) throw ContractError("detector already reached a decision");
    if (!(energy >= 0.0)) throw DomainError("energy must be nonnegative");
    lambda_ += energy - delta_;
    ++n_;
    Verdict v;
    if (n_ < M_) {
      v = lambda_ >= b_ ? Verdict::reject_h0
          : lambda_ <= a_ ? Verdict::accept_h0
                          : Verdict::continue_sampling;
    } else {
      v = lambda_ >= gamma_ ? Verdict::reject_h0 : Verdict::accept_h0;
    }
    terminated_ = v != Verdict::continue_sampling;
    return {v, n_, lambda_};
  }

  int samples() const { return n_; }
  double statistic() const { return lambda_; }
  bool terminated() const { return terminated_; }

 private:
  double a_, b_, gamma_, delta_;
  int M_;
  int n_ = 0;
  double lambda_ = 0.0;
  bool terminated_ = false;
};

SsctDetector detector_new(const SsctConfig& cfg);
Decision detector_step(SsctDetector& state, double energy);

/// Folds detector_step over `next()` until a decision; throws StreamExhausted
/// when `next` reports no more data by returning false.
Decision run_to_decision(const SsctConfig& cfg, const std::function<bool(double&)>& next);
Decision run_to_decision(const SsctConfig& cfg, std::span<const double> energies);

/// The same test on the normalized cumulative energy xi_N = sum 2|r_i|^2/sigma_w^2
/// against a_N, b_N and gamma_bar_M.
Decision run_to_decision_transformed(const SsctConfig& cfg, std::span<const double> energies);

}  // namespace ssct
