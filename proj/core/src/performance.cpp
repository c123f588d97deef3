// SPDX-License-Identifier: Apache-2.0
#include "ssct/performance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssct/errors.hpp"
#include "ssct/montecarlo.hpp"
#include "ssct/recursive_integrals.hpp"

namespace ssct {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::grid: return "grid";
    case Method::montecarlo: return "montecarlo";
  }
  return "unknown";
}

namespace {

template <class Real>
[[noreturn]] void fail_certify(const char* what, int N, double err, int certified) {
  std::ostringstream os;
  os << what << " at N = " << N << " not certified in " << to_string(RealTraits<Real>::precision)
     << " precision (error bound " << err << "); largest certified N = " << certified;
  throw InstabilityError(os.str(), certified);
}

template <class Real>
H0Summary exact_h0_impl(const SsctConfig& cfg, double tol, bool with_asn) {
  using std::exp;
  using std::ldexp;
  using std::log;
  using std::isfinite;
  const int M = cfg.M;
  const IntegralEngine<Real> eng(cfg, M);
  const auto& bs = eng.bounds();

  auto certified = [&](double v, double err) {
    return std::isfinite(v) && std::isfinite(err) && err <= tol && v >= -1e-12 && v <= 1.0 + 1e-9;
  };

  // P(E_N) = 2^{-(N-1)} e^{-b_N/2} I^(N-1); below P+1 the volume is the
  // closed form b_1 b_N^{N-2} / (N-1)!.
  Real alpha = 0, alpha_err = 0;
  for (int N = 1; N < M; ++N) {
    Real term, err;
    if (N - 1 <= bs.P()) {
      const Real lg = (N >= 2 ? log(bs.b(1)) + Real(N - 2) * log(bs.b(N)) : Real(0)) -
                      Real(std::lgamma(static_cast<double>(N))) - bs.b(N) / 2 -
                      Real(N - 1) * log(Real(2));
      term = exp(lg);
      err = Real(4 * N + 10) * RealTraits<Real>::unit_roundoff() * term;
    } else {
      const auto& v = eng.volume(N - 1);
      const Real f = ldexp(exp(-bs.b(N) / 2), -(N - 1));
      term = v.value * f;
      err = eng.rounding_error(v, N) * f;
    }
    if (!certified(to_double(term), to_double(err))) {
      fail_certify<Real>("false-alarm term", N, to_double(err), N - 1);
    }
    alpha += term;
    alpha_err += err;
  }
  Real c = bs.gamma_bar_M();
  if (c < bs.a(M - 1)) c = bs.a(M - 1);
  const auto j = eng.j_upper(M, c, Real(0.5));
  const Real last = ldexp(j.value, -M);
  const Real last_err = ldexp(eng.rounding_error(j, M), -M);
  if (!certified(to_double(last), to_double(last_err))) {
    fail_certify<Real>("terminal false-alarm term", M, to_double(last_err), M - 1);
  }
  alpha += last;
  alpha_err += last_err;

  H0Summary out;
  out.backend = RealTraits<Real>::precision;
  out.alpha = {to_double(alpha), to_double(alpha_err), Method::exact};
  if (!certified(out.alpha.value, out.alpha.tol)) {
    fail_certify<Real>("false-alarm probability", M, out.alpha.tol, M - 1);
  }
  if (!with_asn) return out;

  // E_H0(N_s) = 1 + sum_{N<M} P(C_N), P(C_N) = 2^{-N} J_band(N).
  Real asn = 1, asn_err = 0, prev = 1, tp = 0, tp_err = 0;
  for (int N = 1; N < M; ++N) {
    const auto jb = eng.j_band(N, Real(0.5));
    const Real p = ldexp(jb.value, -N);
    const Real e = ldexp(eng.rounding_error(jb, N), -N);
    if (!certified(to_double(p), to_double(e)) || to_double(p - prev) > tol + to_double(e)) {
      fail_certify<Real>("continuation probability", N, to_double(e), N - 1);
    }
    asn += p;
    asn_err += e;
    prev = p;
    tp = p;
    tp_err = e;
  }
  out.asn = {to_double(asn), to_double(asn_err), Method::exact};
  out.t_p = {to_double(tp), to_double(tp_err), Method::exact};
  return out;
}

}  // namespace

H0Summary exact_h0(const SsctConfig& cfg, Precision precision, double tol, bool with_asn) {
  cfg.validate();
  if (!(tol > 0.0)) throw ContractError("exact_h0: tolerance must be positive");
  switch (precision) {
    case Precision::native: return exact_h0_impl<double>(cfg, tol, with_asn);
    case Precision::extended: return exact_h0_impl<Extended>(cfg, tol, with_asn);
    case Precision::automatic:
      try {
        return exact_h0_impl<double>(cfg, tol, with_asn);
      } catch (const InstabilityError&) {
        return exact_h0_impl<Extended>(cfg, tol, with_asn);
      }
  }
  throw ContractError("exact_h0: unknown precision");
}

Probability false_alarm_exact(const SsctConfig& cfg, Precision precision, double tol) {
  return Probability::clamped(exact_h0(cfg, precision, tol, false).alpha.value, 1e-9);
}

void Priors::validate() const {
  if (!(h0 >= 0.0 && h1 >= 0.0) || std::abs(h0 + h1 - 1.0) > 1e-12) {
    throw ConfigError("priors must be nonnegative and sum to 1");
  }
}

double efficiency(double asn, int m_ed_min) {
  if (m_ed_min < 1) throw ContractError("efficiency: m_ed_min must be positive");
  return 1.0 - asn / m_ed_min;
}

H0Summary evaluate_h0(const SsctConfig& cfg, const EvalOptions& opts) {
  cfg.validate();
  if (cfg.M <= opts.exact_max_m) {
    return exact_h0(cfg, opts.precision, opts.certify_tolerance, true);
  }
  SimSpec spec;
  spec.trials = opts.trials;
  spec.seed = opts.seed;
  spec.hypothesis = Hypothesis::h0;
  spec.cfg = cfg;
  const SimResult s = estimate(spec);
  H0Summary h0;
  h0.alpha = {s.error_rate.point, 3.0 * s.error_rate.std_err, Method::montecarlo};
  h0.asn = {s.asn.point, 3.0 * s.asn.std_err, Method::montecarlo};
  h0.t_p = {s.t_p.point, 3.0 * s.t_p.std_err, Method::montecarlo};
  return h0;
}

H1Summary evaluate_h1(const SsctConfig& cfg, const SignalModel& model, const EvalOptions& opts) {
  cfg.validate();
  opts.grid.validate();
  const int M = cfg.M;
  // gamma_bar gives beta; b_bar and a_bar give the continuation
  // probabilities P_H1(N_s > N) = G_N(0; b_bar) - G_N(0; a_bar).
  const auto curves =
      grid_acceptance_curves(cfg, model, opts.grid, {cfg.gamma_bar, cfg.b_bar, cfg.a_bar}, M);
  const auto& gam = curves[0];
  const auto& up = curves[1];
  const auto& lo = curves[2];
  const double drift = std::max({gam.drift, up.drift, lo.drift});
  H1Summary h1;
  h1.grid_points = gam.points;
  h1.beta = {std::clamp(gam.g0[M - 1], 0.0, 1.0), gam.drift, Method::grid};
  double asn1 = 1.0;
  for (int N = 1; N < M; ++N) asn1 += std::max(0.0, up.g0[N - 1] - lo.g0[N - 1]);
  h1.asn = {asn1, drift * (M - 1), Method::grid};
  h1.t_p = {std::clamp(up.g0[M - 2] - lo.g0[M - 2], 0.0, 1.0), 2.0 * drift, Method::grid};
  return h1;
}

PerformanceReport combine(const H0Summary& h0, const H1Summary& h1, const EvalOptions& opts) {
  opts.priors.validate();
  PerformanceReport r;
  r.priors = opts.priors;
  r.alpha = h0.alpha;
  r.asn_h0 = h0.asn;
  r.t_p_h0 = h0.t_p;
  r.backend = h0.backend;
  r.beta = h1.beta;
  r.asn_h1 = h1.asn;
  r.t_p_h1 = h1.t_p;
  r.grid_points = h1.grid_points;
  const double p0 = opts.priors.h0, p1 = opts.priors.h1;
  auto mix = [&](const Estimate& e0, const Estimate& e1) {
    const Method m = e0.method == Method::montecarlo ? Method::montecarlo : Method::grid;
    return Estimate{p0 * e0.value + p1 * e1.value, p0 * e0.tol + p1 * e1.tol, m};
  };
  r.asn_mixed = mix(r.asn_h0, r.asn_h1);
  r.t_p = mix(r.t_p_h0, r.t_p_h1);
  if (opts.m_ed_min > 0) {
    r.m_ed_min = opts.m_ed_min;
    r.efficiency = efficiency(r.asn_mixed.value, opts.m_ed_min);
  }
  return r;
}

PerformanceReport evaluate(const SsctConfig& cfg, const SignalModel& model,
                           const EvalOptions& opts) {
  opts.priors.validate();
  return combine(evaluate_h0(cfg, opts), evaluate_h1(cfg, model, opts), opts);
}

PerformanceReport asn(const SsctConfig& cfg, const SignalModel& model, const GridSpec& grid,
                      const Priors& priors) {
  EvalOptions opts;
  opts.grid = grid;
  opts.priors = priors;
  return evaluate(cfg, model, opts);
}

}  // namespace ssct
