// SPDX-License-Identifier: Apache-2.0
#include "ssct/boundary.hpp"

#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "ssct/errors.hpp"

namespace ssct {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

BigInt floor_div(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);  // always > 0
  BigInt q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

int to_int(const BigInt& v) { return static_cast<int>(v); }

// s with b_bar + s delta < c <= b_bar + (s + 1) delta, clamped at 0.
int exact_index_s(const Rational& c, const Rational& b_bar, const Rational& delta) {
  const Rational b1 = b_bar + delta;
  if (c <= b1) return 0;
  // Smallest k with c <= b_bar + k delta is ceil((c - b_bar) / delta); s = k - 1.
  const Rational t = (c - b_bar) / delta;
  BigInt k = floor_div(t);
  if (Rational(k) != t) k += 1;
  return to_int(k) - 1;
}

}  // namespace

SsctConfig SsctConfig::from_raw(double a, double b, double gamma, double delta, int M,
                                double snr_m, double noise_power) {
  if (!(noise_power > 0.0)) throw ConfigError("noise power must be positive");
  const double s = 0.5 * noise_power;
  SsctConfig cfg{a / s, b / s, gamma / s, delta / s, M, snr_m, noise_power};
  cfg.validate();
  return cfg;
}

SsctConfig SsctConfig::symmetric(double b_bar, double gamma_bar, int M, double snr_m,
                                 double noise_power) {
  SsctConfig cfg{-b_bar, b_bar, gamma_bar, 2.0 + snr_m, M, snr_m, noise_power};
  cfg.validate();
  return cfg;
}

void SsctConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError("invalid SSCT config: " + msg); };
  for (double v : {a_bar, b_bar, gamma_bar, delta_bar, snr_m, noise_power}) {
    if (!std::isfinite(v)) fail("all parameters must be finite");
  }
  if (!(noise_power > 0.0)) fail("noise power sigma_w^2 must be positive");
  if (!(snr_m > 0.0)) fail("minimum detection SNR must be positive");
  if (!(a_bar < 0.0)) fail("lower threshold a must be negative");
  if (!(b_bar > 0.0)) fail("upper threshold b must be positive");
  if (!(a_bar < gamma_bar && gamma_bar < b_bar)) fail("terminal threshold gamma must lie in (a, b)");
  if (!(delta_bar > 2.0 && delta_bar < 2.0 * (1.0 + snr_m))) {
    std::ostringstream os;
    os << "drift must satisfy sigma_w^2 < Delta < sigma_w^2 (1 + SNR_m), i.e. 2 < delta_bar < "
       << 2.0 * (1.0 + snr_m) << ", got delta_bar = " << delta_bar;
    fail(os.str());
  }
  if (M < 2) fail("truncation size M must be at least 2");
}

template <class Real>
Boundaries<Real>::Boundaries(const SsctConfig& cfg)
    : cfg_(cfg),
      a_bar_(cfg.a_bar),
      b_bar_(cfg.b_bar),
      gamma_bar_(cfg.gamma_bar),
      delta_bar_(cfg.delta_bar) {
  cfg_.validate();
  const Rational a(cfg.a_bar), b(cfg.b_bar), d(cfg.delta_bar);
  P_ = to_int(floor_div(-a / d));
  // a_i <= b_1 for i > P  <=>  (i - 1) delta <= b_bar - a_bar.
  Q_ = to_int(floor_div((b - a) / d)) + 1;
  if (Q_ < P_) Q_ = P_;
}

template <class Real>
int Boundaries<Real>::index_s(double c) const {
  if (!(c > 0.0)) throw DomainError("index_s: c must be positive");
  return exact_index_s(Rational(c), Rational(cfg_.b_bar), Rational(cfg_.delta_bar));
}

template <class Real>
int Boundaries<Real>::index_s_gamma(int n) const {
  const Rational d(cfg_.delta_bar);
  return exact_index_s(Rational(cfg_.gamma_bar) + d * n, Rational(cfg_.b_bar), d);
}

template <class Real>
int Boundaries<Real>::index_s_lower(int n) const {
  if (n <= P_) return 0;
  const Rational d(cfg_.delta_bar);
  return exact_index_s(Rational(cfg_.a_bar) + d * n, Rational(cfg_.b_bar), d);
}

template class Boundaries<double>;
template class Boundaries<Extended>;

double lower_bound(int i, const SsctConfig& cfg) { return BoundarySequences(cfg).a(i); }

double upper_bound(int i, const SsctConfig& cfg) { return BoundarySequences(cfg).b(i); }

int index_s(double c, const SsctConfig& cfg) { return BoundarySequences(cfg).index_s(c); }

PsiVector psi_vector(int n, double c, int N, const SsctConfig& cfg) {
  const BoundarySequences bs(cfg);
  if (N < 2 || n < 0 || n > N - 2) throw ContractError("psi_vector: need N >= 2 and 0 <= n <= N-2");
  if (!(c >= bs.a(N - 1) && c <= bs.b(N))) {
    throw ContractError("psi_vector: c must satisfy a_{N-1} <= c <= b_N");
  }
  const int Q = bs.Q();
  const int s = c > 0.0 ? bs.index_s(c) : 0;
  PsiVector psi;
  psi.entries.reserve(static_cast<std::size_t>(N - n));
  if (n <= N - Q - 2) {
    psi.branch = 1;
    for (int j = 1; j < N - n; ++j) psi.entries.push_back(bs.chain_knot(n, j));
    psi.entries.push_back(c);
  } else if (n <= s - 1) {
    psi.branch = 2;
    psi.entries.assign(static_cast<std::size_t>(N - n - 1), bs.b(n + 1));
    psi.entries.push_back(c);
  } else {
    psi.branch = 3;
    psi.entries.assign(static_cast<std::size_t>(N - n), bs.b(n + 1));
  }
  return psi;
}

PsiVector truncate(const PsiVector& psi, std::size_t i) {
  if (i > psi.entries.size()) throw ContractError("truncate: cannot drop more entries than present");
  PsiVector out = psi;
  out.entries.resize(psi.entries.size() - i);
  return out;
}

}  // namespace ssct
