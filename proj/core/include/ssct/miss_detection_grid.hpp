// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>
#include <vector>

#include "ssct/boundary.hpp"
#include "ssct/signal_model.hpp"
#include "ssct/special_functions.hpp"

namespace ssct {

enum class Quadrature { trapezoid, simpson };

std::string_view to_string(Quadrature q);
Quadrature quadrature_from_string(std::string_view name);

/// Discretization of the backward recursion over t in [a_bar, b_bar].
struct GridSpec {
  int points = 0;  // 0 picks a spacing of about 0.2 normalized units
  Quadrature quadrature = Quadrature::simpson;
  double tolerance = 1e-4;       // allowed change between n and 2n-1 points
  bool check_convergence = true;
  int max_points = 13000;        // refinement stops (and fails) beyond this

  /// Throws ConfigError unless points is 0 or an odd number >= 201.
  void validate() const;
  int resolve_points(const SsctConfig& cfg) const;
};

/// G_k(t) = P(the test, started at statistic t with k samples left, accepts
/// H0), where at the last sample acceptance means t + u < threshold:
///
///   G_k(t) = F(a_bar - t) + int_{a_bar}^{b_bar} G_{k-1}(y) p(y - t) dy,
///   G_1(t) = F(threshold - t),
///
/// with p, F the H1 density and distribution of the increment. G_{k-1} is
/// interpolated piecewise linearly (trapezoid) or piecewise quadratically
/// (simpson) between nodes and the interpolant is integrated exactly against
/// p, so the jump of p at u = -delta_bar needs no special grid alignment.
/// G_2 is integrated directly against the closed-form G_1, whose kink at
/// t = threshold + delta_bar would otherwise dominate the discretization error.
class GridRecursion {
 public:
  GridRecursion(const SsctConfig& cfg, const SignalModel& model, int points, Quadrature q);

  int points() const { return n_; }
  double spacing() const { return h_; }

  /// G_1(0) .. G_K(0) for the given terminal threshold (entry k-1 is G_k(0)).
  std::vector<double> run(double threshold, int K) const;
  /// Largest increase of any G_k along t observed in the last run().
  double monotonicity_violation() const { return violation_; }

 private:
  struct Table {
    int d_min = 0;
    std::vector<double> w;  // w[d - d_min]
    double at(int d) const {
      const int k = d - d_min;
      return (k < 0 || k >= static_cast<int>(w.size())) ? 0.0 : w[k];
    }
  };

  SsctConfig cfg_;
  int n_;
  double h_;
  Quadrature q_;
  std::vector<double> lower_cdf_;  // F(a_bar - t_i)
  Table interior_[2];              // weights for rows of parity 0 / 1, indexed by j - i
  Table left_end_, right_end_;
  std::vector<double> probe_;      // weights for the t = 0 row, indexed by j
  double probe_lower_cdf_ = 0.0;
  double u_max_ = 0.0;             // density is negligible beyond this increment
  SignalModel model_;
  mutable double violation_ = 0.0;

  double second_step(double threshold, double t) const;
};

struct GridOutcome {
  std::vector<double> g0;  // G_1(0) .. G_K(0)
  int points = 0;
  double drift = 0.0;      // max |change| against the coarser grid
};

/// G_k(0) for k = 1..K at the requested threshold. The grid is refined
/// n -> 2n-1 until two successive grids agree within the tolerance; the
/// finer result is returned. Throws RefinementError once max_points would
/// be exceeded.
GridOutcome grid_acceptance_curve(const SsctConfig& cfg, const SignalModel& model,
                                  const GridSpec& grid, double terminal_threshold, int K);
/// Several thresholds sharing one pair of grids.
std::vector<GridOutcome> grid_acceptance_curves(const SsctConfig& cfg, const SignalModel& model,
                                                const GridSpec& grid,
                                                const std::vector<double>& thresholds, int K);

/// beta = G_M(0, terminal_threshold) (terminal_threshold = gamma_bar for the
/// miss-detection probability).
Probability miss_detection_grid(const SsctConfig& cfg, const SignalModel& model,
                                const GridSpec& grid, double terminal_threshold);

}  // namespace ssct
