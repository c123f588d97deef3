// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

#include "ssct/boundary.hpp"
#include "ssct/miss_detection_grid.hpp"
#include "ssct/real.hpp"
#include "ssct/signal_model.hpp"
#include "ssct/special_functions.hpp"

namespace ssct {

enum class Method { exact, grid, montecarlo };

std::string_view to_string(Method m);

/// A reported number with an absolute uncertainty. For exact values `tol`
/// is the certified rounding-error bound, for grid values the refinement
/// drift, for Monte Carlo values three standard errors.
struct Estimate {
  double value = std::numeric_limits<double>::quiet_NaN();
  double tol = 0.0;
  Method method = Method::exact;
};

/// Null-hypothesis quantities.
struct H0Summary {
  Estimate alpha;
  Estimate asn;  // E_H0(N_s); NaN when not requested
  Estimate t_p;  // P_H0(N_s = M)
  Precision backend = Precision::native;
};

/// Throws InstabilityError (carrying the largest certified N) when a term
/// cannot be certified to `tol`. `automatic` tries native first and falls
/// back to extended.
H0Summary exact_h0(const SsctConfig& cfg, Precision precision = Precision::automatic,
                   double tol = 1e-9, bool with_asn = true);

Probability false_alarm_exact(const SsctConfig& cfg, Precision precision = Precision::automatic,
                              double tol = 1e-9);

struct Priors {
  double h0 = 0.5;
  double h1 = 0.5;

  void validate() const;
};

struct PerformanceReport {
  Estimate alpha, beta;
  Estimate asn_h0, asn_h1, asn_mixed;
  Estimate t_p_h0, t_p_h1, t_p;
  Priors priors;
  int m_ed_min = 0;  // 0 when no energy-detector reference was given
  double efficiency = std::numeric_limits<double>::quiet_NaN();
  Precision backend = Precision::native;
  int grid_points = 0;
};

struct EvalOptions {
  Precision precision = Precision::automatic;
  double certify_tolerance = 1e-9;
  /// Exact H0 evaluation costs O(M^3); above this M the H0 quantities are
  /// simulated instead.
  int exact_max_m = 400;
  GridSpec grid;
  Priors priors;
  int m_ed_min = 0;
  std::int64_t trials = 1'000'000;
  std::uint64_t seed = 1;
};

/// 1 - asn / m_ed_min.
double efficiency(double asn, int m_ed_min);

/// Error probabilities, ASN and truncation probabilities. H0 quantities are
/// exact (or simulated above exact_max_m), H1 quantities come from the grid
/// recursion.
PerformanceReport evaluate(const SsctConfig& cfg, const SignalModel& model,
                           const EvalOptions& opts = {});

/// The pieces of evaluate(): H0 quantities depend on the config only,
/// H1 quantities on the config and the signal model.
H0Summary evaluate_h0(const SsctConfig& cfg, const EvalOptions& opts = {});

struct H1Summary {
  Estimate beta, asn, t_p;
  int grid_points = 0;
};

H1Summary evaluate_h1(const SsctConfig& cfg, const SignalModel& model,
                      const EvalOptions& opts = {});

PerformanceReport combine(const H0Summary& h0, const H1Summary& h1, const EvalOptions& opts = {});

/// evaluate() with default options and the given priors.
PerformanceReport asn(const SsctConfig& cfg, const SignalModel& model, const GridSpec& grid,
                      const Priors& priors = {});

}  // namespace ssct
