// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <memory>
#include <mutex>
#include <vector>

#include "ssct/boundary.hpp"
#include "ssct/poly_integral.hpp"
#include "ssct/real.hpp"

namespace ssct {

/// I^(0) .. I^(N_max): Lebesgue volume of the continuation region
/// { a_i < xi_i < b_i, xi_1 <= ... <= xi_N }.
struct VolumeTable {
  std::vector<double> values;
};

/// Exact evaluation of the continuation-region volume I^(N), the
/// exponentially weighted integrals J^(N)_{c,d}(theta), and the correction
/// terms g^(n)_{c,d}(theta).
///
/// Every lower-limit vector psi^N_{n,c} is (up to its last entry) a prefix of
/// the chain [b_{n+1} x Q, a_{n+Q+1}, a_{n+Q+2}, ...], which is the n = 0
/// chain shifted by n delta_bar. By the shift property its polynomial
/// coefficients do not depend on n, so one coefficient vector serves all n
/// and the per-(N, n) weights depend only on L = N - n.
///
/// Every result is a Tracked value: `magnitude` is the same sum carried out
/// on absolute values, and rounding_error() turns it into a first-order
/// error bound.
///
/// Construction is O(max_order^2). The band tables behind j_band are built
/// once on first use (thread-safe).
template <class Real>
class IntegralEngine {
 public:
  using Value = Tracked<Real>;

  explicit IntegralEngine(const SsctConfig& cfg, int max_order = -1);

  const Boundaries<Real>& bounds() const { return bounds_; }
  int max_order() const { return max_order_; }

  /// I^(N), 0 <= N <= max_order.
  const Value& volume(int N) const;
  /// J^(N)_{c,inf}(theta). Requires a_{N-1} <= c < b_N, N <= max_order.
  Value j_upper(int N, const Real& c, const Real& theta) const;
  /// J^(N)_{a_N,b_N}(theta), 1 <= N <= max_order.
  Value j_band(int N, const Real& theta) const;
  /// g^(n)_{c,d}(theta) for the order-N integral; d may be +infinity.
  Value g_term(int n, const Real& c, const Real& d, const Real& theta, int N) const;

  /// First-order rounding-error bound for a value produced at order N.
  Real rounding_error(const Value& v, int N) const;

 private:
  Value eval_a(int k, const Real& x) const;
  Value eval_k(int k, const Real& x) const;
  // sum_{i=1}^{L} theta^{-i} f^(L-i)(x) e^{-theta x} over the a-chain / shared chain.
  Value exp_sum_a(int L, const Real& x, const Real& theta) const;
  Value exp_sum_k(int L, const Real& x, const Real& theta) const;
  Value exp_sum(const std::vector<Value>& f, bool k_chain, int L, const Real& x,
                const Real& theta) const;
  Value j_general(int N, const Real& c, const Real& d, const Real& theta, bool band) const;
  Real a_knot(int j) const { return bounds_.a(j); }
  Real k_knot(int j) const { return bounds_.chain_knot(0, j); }
  void build_band_cache(const Real& theta) const;

  Boundaries<Real> bounds_;
  int max_order_;
  detail::FactorialTable<Real> fact_;
  std::vector<Value> fa_;   // a-chain coefficients
  std::vector<Value> fk_;   // shared chain coefficients
  std::vector<Value> vol_;  // I^(0..max_order)

  // theta-specific per-L band corrections, see j_band().
  struct BandCache {
    Real theta;
    std::vector<Value> h;
  };
  std::unique_ptr<std::mutex> band_mutex_ = std::make_unique<std::mutex>();
  mutable std::shared_ptr<const BandCache> band_;
};

extern template class IntegralEngine<double>;
extern template class IntegralEngine<Extended>;

/// Double-precision convenience wrappers.
VolumeTable volume_table(int N_max, const BoundarySequences& bounds);
double j_upper(int N, double gamma_bar_N, double theta, const SsctConfig& cfg);
double j_band(int N, double theta, const SsctConfig& cfg);
double g_term(int n, double c, double d, double theta, int N, const SsctConfig& cfg);

}  // namespace ssct
