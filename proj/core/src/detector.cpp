// SPDX-License-Identifier: Apache-2.0
#include "ssct/detector.hpp"

namespace ssct {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::reject_h0:
      return "reject_h0";
    case Verdict::accept_h0:
      return "accept_h0";
    case Verdict::continue_sampling:
      return "continue";
  }
  return "unknown";
}

SsctDetector detector_new(const SsctConfig& cfg) { return SsctDetector(cfg); }

Decision detector_step(SsctDetector& state, double energy) { return state.step(energy); }

Decision run_to_decision(const SsctConfig& cfg, const std::function<bool(double&)>& next) {
  SsctDetector det(cfg);
  for (;;) {
    double e = 0.0;
    if (!next(e)) throw StreamExhausted("energy stream ended before a decision");
    const Decision d = det.step(e);
    if (d.terminal()) return d;
  }
}

Decision run_to_decision(const SsctConfig& cfg, std::span<const double> energies) {
  std::size_t i = 0;
  return run_to_decision(cfg, [&](double& e) {
    if (i >= energies.size()) return false;
    e = energies[i++];
    return true;
  });
}

Decision run_to_decision_transformed(const SsctConfig& cfg, std::span<const double> energies) {
  const BoundarySequences bs(cfg);
  const double to_bar = 1.0 / cfg.scale();
  double xi = 0.0;
  for (int N = 1; N <= cfg.M; ++N) {
    if (static_cast<std::size_t>(N) > energies.size()) {
      throw StreamExhausted("energy stream ended before a decision");
    }
    const double e = energies[N - 1];
    if (!(e >= 0.0)) throw DomainError("energy must be nonnegative");
    xi += e * to_bar;
    const double shifted = (xi - N * cfg.delta_bar) * cfg.scale();
    if (N < cfg.M) {
      if (xi >= bs.b(N)) return {Verdict::reject_h0, N, shifted};
      // a_N clamps to 0 for N <= P, where acceptance is impossible unless a_bar + N delta_bar = 0.
      if (xi <= bs.a(N) && (N > bs.P() || cfg.a_bar + N * cfg.delta_bar >= 0.0)) {
        return {Verdict::accept_h0, N, shifted};
      }
    } else {
      return {xi >= bs.gamma_bar_M() ? Verdict::reject_h0 : Verdict::accept_h0, N, shifted};
    }
  }
  throw ContractError("unreachable");
}

}  // namespace ssct
