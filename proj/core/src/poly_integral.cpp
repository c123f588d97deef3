// SPDX-License-Identifier: Apache-2.0
#include "ssct/poly_integral.hpp"

#include "ssct/errors.hpp"

namespace ssct {

PolyIntegral poly_build(std::span<const double> knots) {
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!(knots[i] >= 0.0)) throw ContractError("poly_build: knots must be nonnegative");
    if (i > 0 && knots[i] < knots[i - 1]) throw ContractError("poly_build: knots must be nondecreasing");
  }
  const int k = static_cast<int>(knots.size());
  const detail::FactorialTable<double> fact(k);
  PolyIntegral p;
  p.knots.assign(knots.begin(), knots.end());
  p.coefficients.assign(static_cast<std::size_t>(k) + 1, 0.0);
  p.coefficients[0] = 1.0;
  for (int j = 1; j <= k; ++j) {
    double acc = 0.0;
    for (int i = 0; i < j; ++i) {
      acc -= p.coefficients[i] * detail::power_over_factorial(knots[j - 1] - knots[i], j - i, fact);
    }
    p.coefficients[j] = acc;
  }
  return p;
}

double poly_eval_prefix(const PolyIntegral& p, int k, double xi) {
  if (k < 0 || k > p.order()) throw ContractError("poly_eval_prefix: order out of range");
  const detail::FactorialTable<double> fact(k);
  double value = p.coefficients[k];
  for (int i = 0; i < k; ++i) {
    value += p.coefficients[i] * detail::power_over_factorial(xi - p.knots[i], k - i, fact);
  }
  return value;
}

double poly_eval(const PolyIntegral& p, double xi) { return poly_eval_prefix(p, p.order(), xi); }

}  // namespace ssct
