// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "ssct/real.hpp"

namespace ssct {

/// Ordered integral with lower limits chi_1 <= ... <= chi_k,
///
///   f^(k)(xi) = int_{chi_k}^{xi} int_{chi_{k-1}}^{x_k} ... int_{chi_1}^{x_2} dx_1 ... dx_k,
///
/// stored as the coefficients f_0 .. f_k of
///
///   f^(k)(xi) = sum_{i<k} f_i (xi - chi_{i+1})^{k-i} / (k-i)! + f_k.
///
/// The first i+1 coefficients of an order-k polynomial are exactly those of
/// its order-i prefix, so one coefficient vector serves every prefix.
struct PolyIntegral {
  std::vector<double> knots;
  std::vector<double> coefficients;

  int order() const { return static_cast<int>(knots.size()); }
};

/// Throws ContractError on decreasing or negative knots.
PolyIntegral poly_build(std::span<const double> knots);
double poly_eval(const PolyIntegral& p, double xi);
/// Evaluates the order-k prefix (first k knots) of `p`.
double poly_eval_prefix(const PolyIntegral& p, int k, double xi);

namespace detail {

/// 1/m! and ln m! for m = 0 .. n, in the working precision.
template <class Real>
class FactorialTable {
 public:
  explicit FactorialTable(int n) : inv_(static_cast<std::size_t>(n) + 1), log_(inv_.size()) {
    using std::log;
    inv_[0] = Real(1);
    log_[0] = Real(0);
    for (int m = 1; m <= n; ++m) {
      inv_[m] = inv_[m - 1] / Real(m);
      log_[m] = log_[m - 1] + log(Real(m));
    }
  }

  int size() const { return static_cast<int>(inv_.size()) - 1; }
  const Real& inv(int m) const { return inv_[m]; }
  const Real& log(int m) const { return log_[m]; }

 private:
  std::vector<Real> inv_;
  std::vector<Real> log_;
};

/// x^m / m!, falling back to the log domain when either factor would leave
/// the exponent range.
template <class Real>
Real power_over_factorial(const Real& x, int m, const FactorialTable<Real>& fact) {
  using std::abs;
  using std::exp;
  using std::log;
  using std::pow;
  if (m == 0) return Real(1);
  if (x == Real(0)) return Real(0);
  const Real max_log = RealTraits<Real>::log_max() - Real(8);
  const Real log_pow = Real(m) * log(abs(x));
  if (log_pow < max_log && fact.log(m) < max_log && log_pow - fact.log(m) > -max_log) {
    return pow(x, m) * fact.inv(m);
  }
  const Real mag = exp(log_pow - fact.log(m));
  return (x < Real(0) && (m % 2 == 1)) ? -mag : mag;
}

}  // namespace detail

}  // namespace ssct
