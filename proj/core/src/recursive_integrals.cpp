// SPDX-License-Identifier: Apache-2.0
#include "ssct/recursive_integrals.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ssct/errors.hpp"

namespace ssct {

std::string_view to_string(Precision p) {
  switch (p) {
    case Precision::native:
      return "native";
    case Precision::extended:
      return "extended";
    case Precision::automatic:
      return "auto";
  }
  return "unknown";
}

Precision precision_from_string(std::string_view name) {
  if (name == "native") return Precision::native;
  if (name == "extended") return Precision::extended;
  if (name == "auto") return Precision::automatic;
  throw ConfigError("unknown precision backend '" + std::string(name) +
                    "' (expected native, extended or auto)");
}

namespace {

template <class Real>
struct Limits {
  static Real max_log() { return RealTraits<Real>::log_max() - Real(16); }
  static Real min_log() { return RealTraits<Real>::log_min_normal() + Real(40); }
};

// exp(log_scale) * (value, magnitude); poisons the magnitude when the scale
// leaves the exponent range instead of silently flushing to zero.
template <class Real>
Tracked<Real> scaled_exp(const Real& log_scale, const Real& value, const Real& magnitude) {
  using std::exp;
  if (log_scale > Limits<Real>::max_log() || log_scale < Limits<Real>::min_log()) {
    return Tracked<Real>(Real(0), std::numeric_limits<Real>::infinity());
  }
  const Real s = exp(log_scale);
  return Tracked<Real>(value * s, magnitude * s);
}

// P(Poisson(y) <= R) for y >= 0, evaluated without cancellation.
template <class Real>
Real poisson_cdf(const Real& y, int R, const detail::FactorialTable<Real>& fact);

// P(Poisson(y) >= L) for y >= 0, L >= 1, evaluated without cancellation.
template <class Real>
Real poisson_sf(const Real& y, int L, const detail::FactorialTable<Real>& fact) {
  using std::exp;
  using std::log;
  if (L <= 0) return Real(1);
  if (y == Real(0)) return Real(0);
  if (y >= Real(L)) return Real(1) - poisson_cdf(y, L - 1, fact);
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real term = exp(Real(L) * log(y) - fact.log(L) - y);
  Real sum = Real(0);
  for (int m = L;; ++m) {
    sum += term;
    term *= y / Real(m + 1);
    if (term <= sum * eps * Real(1e-3) || m > L + 100000) break;
  }
  return sum;
}

template <class Real>
Real poisson_cdf(const Real& y, int R, const detail::FactorialTable<Real>& fact) {
  using std::exp;
  using std::log;
  if (R < 0) return Real(0);
  if (y == Real(0)) return Real(1);
  if (y < Real(R + 1)) return Real(1) - poisson_sf(y, R + 1, fact);
  // Terms increase with m up to R, so sum downward from the largest one.
  Real term = exp(Real(R) * log(y) - fact.log(R) - y);
  Real sum = Real(0);
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int m = R; m >= 0; --m) {
    sum += term;
    term *= Real(m) / y;
    if (term <= sum * eps * Real(1e-3)) break;
  }
  return sum;
}

}  // namespace

template <class Real>
IntegralEngine<Real>::IntegralEngine(const SsctConfig& cfg, int max_order)
    : bounds_(cfg),
      max_order_(max_order < 0 ? cfg.M : max_order),
      fact_(std::max(max_order_, 1) + 2) {
  if (max_order_ < 1) throw ContractError("IntegralEngine: max_order must be >= 1");
  const auto build = [this](std::vector<Value>& f, auto knot) {
    f.assign(static_cast<std::size_t>(max_order_) + 1, Value());
    f[0] = Value::exact(Real(1));
    for (int k = 1; k <= max_order_; ++k) {
      const Real chi_k = knot(k);
      Value acc;
      for (int i = 0; i < k; ++i) {
        const Real p = detail::power_over_factorial(chi_k - knot(i + 1), k - i, fact_);
        if (p != Real(0)) acc -= f[i] * p;
      }
      f[k] = acc;
    }
  };
  build(fa_, [this](int j) { return a_knot(j); });
  build(fk_, [this](int j) { return k_knot(j); });

  // I^(N) = F_a^(N)(b_N) - sum_{n<=N-2} F_K^(N-n)(b_{N-n}) I^(n).
  std::vector<Value> w(static_cast<std::size_t>(max_order_) + 1);
  for (int L = 2; L <= max_order_; ++L) w[L] = eval_k(L, bounds_.b(L));
  vol_.assign(static_cast<std::size_t>(max_order_) + 1, Value());
  vol_[0] = Value::exact(Real(1));
  for (int N = 1; N <= max_order_; ++N) {
    Value acc = eval_a(N, bounds_.b(N));
    for (int n = 0; n <= N - 2; ++n) acc -= w[N - n] * vol_[n];
    vol_[N] = acc;
  }
}

template <class Real>
typename IntegralEngine<Real>::Value IntegralEngine<Real>::eval_a(int k, const Real& x) const {
  Value v = fa_[k];
  for (int i = 0; i < k; ++i) {
    v += fa_[i] * detail::power_over_factorial(x - a_knot(i + 1), k - i, fact_);
  }
  return v;
}

template <class Real>
typename IntegralEngine<Real>::Value IntegralEngine<Real>::eval_k(int k, const Real& x) const {
  Value v = fk_[k];
  for (int i = 0; i < k; ++i) {
    if (fk_[i].magnitude == Real(0)) continue;
    v += fk_[i] * detail::power_over_factorial(x - k_knot(i + 1), k - i, fact_);
  }
  return v;
}

template <class Real>
const typename IntegralEngine<Real>::Value& IntegralEngine<Real>::volume(int N) const {
  if (N < 0 || N > max_order_) throw ContractError("volume: N out of range");
  return vol_[N];
}

template <class Real>
typename IntegralEngine<Real>::Value IntegralEngine<Real>::exp_sum(const std::vector<Value>& f,
                                                                  bool k_chain, int L,
                                                                  const Real& x,
                                                                  const Real& theta) const {
  using std::abs;
  using std::log;
  // sum_{i=1}^{L} theta^{-i} f^(L-i)(x) e^{-theta x}
  //   = sum_{j<L} f_j theta^{j-L} e^{-theta x} sum_{m=0}^{L-1-j} y_j^m / m!,
  // with y_j = theta (x - chi_{j+1}).
  const Real log_theta = log(theta);
  Value total;
  for (int j = 0; j < L; ++j) {
    if (f[j].magnitude == Real(0)) continue;
    const Real chi = k_chain ? k_knot(j + 1) : a_knot(j + 1);
    const Real y = theta * (x - chi);
    const int R = L - 1 - j;
    const Real log_pow = Real(j - L) * log_theta;
    Value b;
    if (y >= Real(0)) {
      // e^{-theta x} e_R(y) = e^{-theta chi} P(Poisson(y) <= R).
      const Real cdf = poisson_cdf(y, R, fact_);
      b = scaled_exp(log_pow - theta * chi, cdf, cdf);
    } else {
      Real term(1), sum(1), mag(1);
      for (int m = 1; m <= R; ++m) {
        term *= y / Real(m);
        sum += term;
        mag += abs(term);
      }
      b = scaled_exp(log_pow - theta * x, sum, mag);
    }
    total += f[j] * b;
  }
  return total;
}

template <class Real>
typename IntegralEngine<Real>::Value IntegralEngine<Real>::exp_sum_a(int L, const Real& x,
                                                                    const Real& theta) const {
  return exp_sum(fa_, false, L, x, theta);
}

template <class Real>
typename IntegralEngine<Real>::Value IntegralEngine<Real>::exp_sum_k(int L, const Real& x,
                                                                    const Real& theta) const {
  return exp_sum(fk_, true, L, x, theta);
}

template <class Real>
typename IntegralEngine<Real>::Value IntegralEngine<Real>::g_term(int n, const Real& c,
                                                                 const Real& d, const Real& theta,
                                                                 int N) const {
  using std::isinf;
  using std::log;
  if (N < 2 || N > max_order_ || n < 0 || n > N - 2) {
    throw ContractError("g_term: need 2 <= N <= max_order and 0 <= n <= N-2");
  }
  if (!(theta > Real(0))) throw ContractError("g_term: theta must be positive");
  if (!(c >= bounds_.a(N - 1) && c <= bounds_.b(N))) {
    throw ContractError("g_term: c must satisfy a_{N-1} <= c <= b_N");
  }
  if (!(d > c)) throw ContractError("g_term: need d > c");
  const bool d_inf = isinf(d);
  const int L = N - n;
  const Real bn1 = bounds_.b(n + 1);
  const Real log_theta = log(theta);

  const bool closed = c <= bounds_.b(1) || n >= bounds_.index_s(to_double(c));
  Value bracket;
  if (closed) {
    // theta^{-L} [e^{-theta b_{n+1}} - e^{-theta d} e_{L-1}(theta (d - b_{n+1}))]
    //   = theta^{-L} e^{-theta b_{n+1}} P(Poisson(theta (d - b_{n+1})) >= L).
    const Real tail = d_inf ? Real(1) : poisson_sf(theta * (d - bn1), L, fact_);
    bracket = scaled_exp(-Real(L) * log_theta - theta * bn1, tail, tail);
  } else {
    const Real shift = Real(n) * bounds_.delta_bar();
    bracket = exp_sum_k(L, c - shift, theta);
    if (!d_inf) bracket -= exp_sum_k(L, d - shift, theta);
    bracket = bracket * scaled_exp(-theta * shift, Real(1), Real(1));
  }
  return vol_[n] * bracket;
}

template <class Real>
typename IntegralEngine<Real>::Value IntegralEngine<Real>::j_general(int N, const Real& c,
                                                                    const Real& d,
                                                                    const Real& theta,
                                                                    bool band) const {
  using std::isinf;
  Value j = exp_sum_a(N, c, theta);
  if (!isinf(d)) j -= exp_sum_a(N, d, theta);
  if (N < 2) return j;
  if (band) {
    build_band_cache(theta);
    std::shared_ptr<const BandCache> cache;
    {
      std::lock_guard<std::mutex> lock(*band_mutex_);
      cache = band_;
    }
    for (int n = 0; n <= N - 2; ++n) {
      const Value decay = scaled_exp(-theta * Real(n) * bounds_.delta_bar(), Real(1), Real(1));
      j -= vol_[n] * (cache->h[N - n] * decay);
    }
  } else {
    for (int n = 0; n <= N - 2; ++n) j -= g_term(n, c, d, theta, N);
  }
  return j;
}

template <class Real>
void IntegralEngine<Real>::build_band_cache(const Real& theta) const {
  using std::log;
  std::lock_guard<std::mutex> lock(*band_mutex_);
  if (band_ && band_->theta == theta) return;
  // Band correction for a given L = N - n, normalised so that
  // g^(n)_{a_N,b_N}(theta) = I^(n) e^{-theta n delta_bar} h[L].
  auto cache = std::make_shared<BandCache>();
  cache->theta = theta;
  cache->h.assign(static_cast<std::size_t>(max_order_) + 1, Value());
  const int Q = bounds_.Q();
  const Real log_theta = log(theta);
  const Real b1 = bounds_.b(1);
  for (int L = 2; L <= max_order_; ++L) {
    if (L <= Q) {
      const Real tail = poisson_sf(theta * (bounds_.b(L) - b1), L, fact_);
      cache->h[L] = scaled_exp(-Real(L) * log_theta - theta * b1, tail, tail);
    } else {
      // a_N - n delta_bar = a_bar + L delta_bar (a_N > b_1 > 0 here).
      const Real lower = bounds_.config().a_bar + Real(L) * bounds_.delta_bar();
      cache->h[L] = exp_sum_k(L, lower, theta) - exp_sum_k(L, bounds_.b(L), theta);
    }
  }
  band_ = std::move(cache);
}

template <class Real>
typename IntegralEngine<Real>::Value IntegralEngine<Real>::j_upper(int N, const Real& c,
                                                                  const Real& theta) const {
  if (N < 1 || N > max_order_) throw ContractError("j_upper: N out of range");
  if (!(theta > Real(0))) throw ContractError("j_upper: theta must be positive");
  if (!(c >= bounds_.a(N - 1) && c < bounds_.b(N))) {
    throw ContractError("j_upper: c must satisfy a_{N-1} <= c < b_N");
  }
  return j_general(N, c, std::numeric_limits<Real>::infinity(), theta, false);
}

template <class Real>
typename IntegralEngine<Real>::Value IntegralEngine<Real>::j_band(int N, const Real& theta) const {
  if (N < 1 || N > max_order_) throw ContractError("j_band: N out of range");
  if (!(theta > Real(0))) throw ContractError("j_band: theta must be positive");
  return j_general(N, bounds_.a(N), bounds_.b(N), theta, true);
}

template <class Real>
Real IntegralEngine<Real>::rounding_error(const Value& v, int N) const {
  return Real(16 * N + 16) * RealTraits<Real>::unit_roundoff() * v.magnitude;
}

template class IntegralEngine<double>;
template class IntegralEngine<Extended>;

VolumeTable volume_table(int N_max, const BoundarySequences& bounds) {
  if (N_max < 1 || N_max > bounds.M() - 1) {
    throw ContractError("volume_table: need 1 <= N_max <= M - 1");
  }
  const IntegralEngine<double> engine(bounds.config(), N_max);
  VolumeTable t;
  t.values.reserve(static_cast<std::size_t>(N_max) + 1);
  for (int N = 0; N <= N_max; ++N) t.values.push_back(engine.volume(N).value);
  return t;
}

double j_upper(int N, double gamma_bar_N, double theta, const SsctConfig& cfg) {
  return IntegralEngine<double>(cfg, std::max(N, 1)).j_upper(N, gamma_bar_N, theta).value;
}

double j_band(int N, double theta, const SsctConfig& cfg) {
  if (N < 1 || N > cfg.M - 1) throw ContractError("j_band: need 1 <= N <= M - 1");
  return IntegralEngine<double>(cfg, std::max(N, 1)).j_band(N, theta).value;
}

double g_term(int n, double c, double d, double theta, int N, const SsctConfig& cfg) {
  return IntegralEngine<double>(cfg, std::max(N, 2)).g_term(n, c, d, theta, N).value;
}

}  // namespace ssct
