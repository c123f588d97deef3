// SPDX-License-Identifier: Apache-2.0
#include "ssct/miss_detection_grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "ssct/errors.hpp"

namespace ssct {

std::string_view to_string(Quadrature q) { return q == Quadrature::simpson ? "simpson" : "trapezoid"; }

Quadrature quadrature_from_string(std::string_view name) {
  if (name == "simpson") return Quadrature::simpson;
  if (name == "trapezoid") return Quadrature::trapezoid;
  throw ConfigError("unknown quadrature '" + std::string(name) + "' (expected simpson or trapezoid)");
}

void GridSpec::validate() const {
  if (points != 0 && (points < 201 || points % 2 == 0)) {
    throw ConfigError("grid points must be an odd number >= 201 (or 0 for automatic)");
  }
  if (!(tolerance > 0.0)) throw ConfigError("grid tolerance must be positive");
  if (max_points < 201) throw ConfigError("grid max_points must be at least 201");
}

int GridSpec::resolve_points(const SsctConfig& cfg) const {
  validate();
  if (points != 0) return points;
  const double width = cfg.b_bar - cfg.a_bar;
  const int n = static_cast<int>(std::ceil(width / 0.2)) + 1;
  return std::max(201, n | 1);
}

namespace {

// One polynomial piece of an interpolation basis function, in coordinates z
// relative to its node: shape(z) = c0 + c1 z + c2 z^2 on [lo, hi].
struct Piece {
  double lo, hi, c0, c1, c2;
  double operator()(double z) const { return c0 + z * (c1 + z * c2); }
};

using Shape = std::vector<Piece>;

enum ShapeKind { kEven = 0, kOdd = 1, kLeft = 2, kRight = 3 };

std::array<Shape, 4> make_shapes(Quadrature q, double h) {
  std::array<Shape, 4> s;
  if (q == Quadrature::trapezoid) {
    const Piece up{-h, 0.0, 1.0, 1.0 / h, 0.0};
    const Piece down{0.0, h, 1.0, -1.0 / h, 0.0};
    s[kEven] = {up, down};
    s[kOdd] = {up, down};
    s[kLeft] = {down};
    s[kRight] = {up};
  } else {
    const double k = 1.0 / (2.0 * h * h);
    // (z + h)(z + 2h) / 2h^2 and (z - h)(z - 2h) / 2h^2
    const Piece up{-2.0 * h, 0.0, 2.0 * h * h * k, 3.0 * h * k, k};
    const Piece down{0.0, 2.0 * h, 2.0 * h * h * k, -3.0 * h * k, k};
    const Piece mid_l{-h, 0.0, 1.0, 0.0, -1.0 / (h * h)};
    const Piece mid_r{0.0, h, 1.0, 0.0, -1.0 / (h * h)};
    s[kEven] = {up, down};
    s[kOdd] = {mid_l, mid_r};
    s[kLeft] = {down};
    s[kRight] = {up};
  }
  return s;
}

// int shape(z) p(offset + z) dz, with p the increment density (zero below -delta).
template <class Pdf>
double shape_weight(const Shape& shape, double offset, double delta, const Pdf& pdf) {
  using Gauss = boost::math::quadrature::gauss<double, 20>;
  double total = 0.0;
  for (const Piece& piece : shape) {
    double lo = piece.lo;
    const double hi = piece.hi;
    const double z_start = -delta - offset;  // support begins here
    if (z_start >= hi) continue;
    if (z_start > lo) lo = z_start;
    total += Gauss::integrate([&](double z) { return piece(z) * pdf(offset + z); }, lo, hi);
  }
  return total;
}

// Four independent partial sums; fixed order, so results do not depend on the build.
double dot(const double* a, const double* b, int n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  int j = 0;
  for (; j + 4 <= n; j += 4) {
    s0 += a[j] * b[j];
    s1 += a[j + 1] * b[j + 1];
    s2 += a[j + 2] * b[j + 2];
    s3 += a[j + 3] * b[j + 3];
  }
  for (; j < n; ++j) s0 += a[j] * b[j];
  return (s0 + s1) + (s2 + s3);
}

}  // namespace

GridRecursion::GridRecursion(const SsctConfig& cfg, const SignalModel& model, int points,
                             Quadrature q)
    : cfg_(cfg), n_(points), q_(q), model_(model) {
  cfg_.validate();
  if (n_ < 3) throw ConfigError("grid needs at least 3 points");
  if (q_ == Quadrature::simpson && n_ % 2 == 0) {
    throw ConfigError("simpson grid needs an odd number of points");
  }
  h_ = (cfg.b_bar - cfg.a_bar) / (n_ - 1);
  const double delta = cfg.delta_bar;
  const auto pdf = [&](double u) { return h1_increment_pdf(u, model_, cfg_); };

  // Upper cutoff beyond which the density is negligible.
  double u_max = std::max(1.0, 2.0 * model_.mean_lambda());
  while (pdf(u_max) > 1e-19 || u_max < model_.mean_lambda() + 4.0) u_max += 1.0;
  u_max_ = u_max;

  const auto shapes = make_shapes(q_, h_);
  const int reach = (q_ == Quadrature::simpson) ? 2 : 1;
  const int d_min = std::max(-(n_ - 1), static_cast<int>(std::floor(-delta / h_)) - reach);
  const int d_max = std::min(n_ - 1, static_cast<int>(std::ceil(u_max / h_)) + reach);

  const auto fill = [&](Table& t, auto kind_of_offset) {
    t.d_min = d_min;
    t.w.assign(static_cast<std::size_t>(d_max - d_min + 1), 0.0);
    for (int d = d_min; d <= d_max; ++d) {
      t.w[d - d_min] = shape_weight(shapes[kind_of_offset(d)], d * h_, delta, pdf);
    }
  };
  for (int parity = 0; parity < 2; ++parity) {
    fill(interior_[parity], [&](int d) {
      const int j_parity = ((parity + d) % 2 + 2) % 2;
      return (q_ == Quadrature::simpson && j_parity == 1) ? kOdd : kEven;
    });
  }
  fill(left_end_, [](int) { return kLeft; });
  fill(right_end_, [](int) { return kRight; });

  lower_cdf_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    lower_cdf_[i] = h1_increment_cdf(cfg.a_bar - (cfg.a_bar + i * h_), model_, cfg_);
  }
  probe_.assign(n_, 0.0);
  for (int j = 0; j < n_; ++j) {
    const double tj = cfg.a_bar + j * h_;
    const int kind = j == 0 ? kLeft
                     : j == n_ - 1 ? kRight
                     : (q_ == Quadrature::simpson && j % 2 == 1) ? kOdd
                                                                  : kEven;
    if (tj + shapes[kind].back().hi <= -delta || tj + shapes[kind].front().lo > u_max) continue;
    probe_[j] = shape_weight(shapes[kind], tj, delta, pdf);
  }
  probe_lower_cdf_ = h1_increment_cdf(cfg.a_bar, model_, cfg_);
}

double GridRecursion::second_step(double threshold, double t) const {
  using Gauss = boost::math::quadrature::gauss<double, 20>;
  const double delta = cfg_.delta_bar;
  // G_1(y) = F(threshold - y) vanishes for y >= threshold + delta_bar.
  const double lo = std::max(cfg_.a_bar, t - delta);
  const double hi = std::min({cfg_.b_bar, threshold + delta, t + u_max_});
  double s = h1_increment_cdf(cfg_.a_bar - t, model_, cfg_);
  if (!(hi > lo)) return s;
  const int panels = static_cast<int>(std::ceil((hi - lo) / 4.0));
  const double w = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    s += Gauss::integrate(
        [&](double y) {
          return h1_increment_cdf(threshold - y, model_, cfg_) *
                 h1_increment_pdf(y - t, model_, cfg_);
        },
        lo + p * w, p + 1 == panels ? hi : lo + (p + 1) * w);
  }
  return std::clamp(s, 0.0, 1.0);
}

std::vector<double> GridRecursion::run(double threshold, int K) const {
  if (K < 1) throw ContractError("GridRecursion::run: K must be >= 1");
  if (!(threshold >= cfg_.a_bar && threshold <= cfg_.b_bar)) {
    throw ContractError("GridRecursion::run: threshold must lie in [a_bar, b_bar]");
  }
  std::vector<double> g(n_), next(n_), out;
  out.reserve(K);
  out.push_back(h1_increment_cdf(threshold, model_, cfg_));
  violation_ = 0.0;
  if (K == 1) return out;
  out.push_back(second_step(threshold, 0.0));
  if (K == 2) return out;
  for (int i = 0; i < n_; ++i) g[i] = second_step(threshold, cfg_.a_bar + i * h_);
  for (int i = 0; i + 1 < n_; ++i) violation_ = std::max(violation_, g[i + 1] - g[i]);
  const int d_min = interior_[0].d_min;
  const int d_max = d_min + static_cast<int>(interior_[0].w.size()) - 1;
  for (int k = 3; k <= K; ++k) {
    double probe = probe_lower_cdf_;
    for (int j = 0; j < n_; ++j) probe += probe_[j] * g[j];
    out.push_back(probe);
    if (k == K) break;
    for (int i = 0; i < n_; ++i) {
      const Table& t = interior_[i % 2];
      const double* w = t.w.data();
      const int base = i + d_min;  // node j uses w[j - base]
      const int j_lo = std::max(1, i + d_min);
      const int j_hi = std::min(n_ - 2, i + d_max);
      double acc = dot(w + (j_lo - base), g.data() + j_lo, j_hi - j_lo + 1);
      acc += left_end_.at(-i) * g[0];
      acc += right_end_.at(n_ - 1 - i) * g[n_ - 1];
      // quadratic pieces can overshoot across kinks of G_{k-1}
      next[i] = std::clamp(lower_cdf_[i] + acc, 0.0, 1.0);
    }
    for (int i = 0; i + 1 < n_; ++i) violation_ = std::max(violation_, next[i + 1] - next[i]);
    g.swap(next);
  }
  return out;
}

std::vector<GridOutcome> grid_acceptance_curves(const SsctConfig& cfg, const SignalModel& model,
                                                const GridSpec& grid,
                                                const std::vector<double>& thresholds, int K) {
  int n = grid.resolve_points(cfg);
  std::vector<GridOutcome> out(thresholds.size());
  {
    const GridRecursion coarse(cfg, model, n, grid.quadrature);
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      out[t].g0 = coarse.run(thresholds[t], K);
      out[t].points = n;
    }
  }
  if (!grid.check_convergence) return out;
  for (;;) {
    const int m = 2 * n - 1;
    const GridRecursion fine(cfg, model, m, grid.quadrature);
    double drift = 0.0;
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      std::vector<double> gf = fine.run(thresholds[t], K);
      for (int k = 0; k < K; ++k) drift = std::max(drift, std::abs(gf[k] - out[t].g0[k]));
      out[t].g0.swap(gf);
      out[t].points = m;
    }
    for (auto& o : out) o.drift = drift;
    if (drift <= grid.tolerance) return out;
    if (2 * m - 1 > grid.max_points) {
      throw RefinementError("grid recursion did not converge: refining to " + std::to_string(m) +
                                " points moved G_k(0) by " + std::to_string(drift),
                            drift);
    }
    n = m;
  }
}

GridOutcome grid_acceptance_curve(const SsctConfig& cfg, const SignalModel& model,
                                  const GridSpec& grid, double terminal_threshold, int K) {
  return grid_acceptance_curves(cfg, model, grid, {terminal_threshold}, K).front();
}

Probability miss_detection_grid(const SsctConfig& cfg, const SignalModel& model,
                                const GridSpec& grid, double terminal_threshold) {
  const GridOutcome o = grid_acceptance_curve(cfg, model, grid, terminal_threshold, cfg.M);
  return Probability::clamped(o.g0.back(), 1e-9);
}

}  // namespace ssct
