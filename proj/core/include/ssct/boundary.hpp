// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "ssct/real.hpp"

namespace ssct {

/// Detector design parameters, stored in normalized units (energies divided
/// by sigma_w^2 / 2). `noise_power` keeps the raw scale for the online
/// detector and the simulator.
struct SsctConfig {
  double a_bar = 0.0;      // lower threshold, < 0
  double b_bar = 0.0;      // upper threshold, > 0
  double gamma_bar = 0.0;  // terminal threshold in (a_bar, b_bar)
  double delta_bar = 0.0;  // per-sample drift, in (2, 2 (1 + snr_m))
  int M = 0;               // truncation size, >= 2
  double snr_m = 0.0;      // minimum detection SNR, linear
  double noise_power = 1.0;

  /// Builds a config from thresholds in raw energy units.
  static SsctConfig from_raw(double a, double b, double gamma, double delta, int M, double snr_m,
                             double noise_power);

  /// The design used throughout the comparison tables: drift 2 + SNR_m and
  /// symmetric thresholds a_bar = -b_bar.
  static SsctConfig symmetric(double b_bar, double gamma_bar, int M, double snr_m,
                              double noise_power = 1.0);

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;

  double scale() const { return 0.5 * noise_power; }
  double a() const { return a_bar * scale(); }
  double b() const { return b_bar * scale(); }
  double gamma() const { return gamma_bar * scale(); }
  double delta() const { return delta_bar * scale(); }
};

/// Lower limits psi^N_{n,c} of the ordered integrals used by the volume and
/// exponential-integral recursions.
struct PsiVector {
  std::vector<double> entries;
  int branch = 0;  // 1, 2 or 3 following the three-case definition
};

/// Transformed stopping boundaries a_i, b_i of the cumulative normalized
/// energy xi_N, plus the discrete indices P, Q, s. Integer indices are
/// computed in exact rational arithmetic from the config fields so that
/// branch selection never depends on rounding.
template <class Real>
class Boundaries {
 public:
  explicit Boundaries(const SsctConfig& cfg);

  const SsctConfig& config() const { return cfg_; }
  int M() const { return cfg_.M; }
  /// Largest i with a_bar + i delta_bar <= 0.
  int P() const { return P_; }
  /// Integer with a_Q <= b_1 < a_{Q+1}.
  int Q() const { return Q_; }

  Real a(int i) const { return i <= P_ ? Real(0) : a_bar_ + Real(i) * delta_bar_; }
  Real b(int i) const { return b_bar_ + Real(i) * delta_bar_; }
  Real gamma_at(int n) const { return gamma_bar_ + Real(n) * delta_bar_; }
  Real gamma_bar_M() const { return gamma_at(cfg_.M); }
  Real delta_bar() const { return delta_bar_; }

  /// s with b_s < c <= b_{s+1}; 0 when c <= b_1.
  int index_s(double c) const;
  /// index_s evaluated exactly at c = gamma_bar + n delta_bar.
  int index_s_gamma(int n) const;
  /// index_s evaluated exactly at c = a_n.
  int index_s_lower(int n) const;

  /// j-th (1-based) knot of the chain that every psi^N_{n,c} is a prefix of
  /// (up to its last entry): Q copies of b_{n+1} followed by a_{Q+n+1}, ...
  Real chain_knot(int n, int j) const { return j <= Q_ ? b(n + 1) : a(n + j); }

 private:
  SsctConfig cfg_;
  Real a_bar_, b_bar_, gamma_bar_, delta_bar_;
  int P_ = 0;
  int Q_ = 0;
};

using BoundarySequences = Boundaries<double>;

extern template class Boundaries<double>;
extern template class Boundaries<Extended>;

/// a_i: 0 for i <= P, a_bar + i delta_bar beyond.
double lower_bound(int i, const SsctConfig& cfg);
/// b_i = b_bar + i delta_bar.
double upper_bound(int i, const SsctConfig& cfg);
/// s with b_s < c <= b_{s+1}. Throws DomainError for c <= 0.
int index_s(double c, const SsctConfig& cfg);

/// psi^N_{n,c}. Requires N >= 2, 0 <= n <= N-2 and a_{N-1} <= c <= b_N.
PsiVector psi_vector(int n, double c, int N, const SsctConfig& cfg);
/// Drops the last i entries (the action of A_i), giving psi^{N-i}_{n,c}.
PsiVector truncate(const PsiVector& psi, std::size_t i);

}  // namespace ssct
