#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mixhom/grid.hpp"
#include "mixhom/kernel.hpp"

namespace mixhom {

struct TruncationOptions {
  /// Metric of the excised ball {|y| < eps}.
  MetricKind metric = MetricKind::Parabolic;
  /// Near/far split radius R: the near part is K chi with chi = 1 on |y| <= R/2, 0 on |y| >= R.
  double near_radius = 1.0;
  /// Smallest admissible eps.
  double min_epsilon = 0x1p-14;
  /// Target sampling step for the far part.
  double far_spacing = 1.0 / 64.0;
  /// Cap on the oversampled far grid, total points.
  std::size_t max_far_points = std::size_t{1} << 22;
  /// Multiplies every quadrature node count.
  double resolution = 1.0;
  int nufft_spread = 12;
};

/// Truncated singular integral T_eps f = integral_{|y| >= eps} K(y) f(x - y) dy on the torus,
/// realised as the Fourier multiplier m_eps(xi) = integral_{|y| >= eps} K(y) exp(-i xi.y) dy
/// evaluated at the dual grid.
///
/// The smooth far part K (1 - chi) is sampled on an oversampled grid and transformed
/// directly. The near part K chi on eps <= |y| < R uses polar quadrature y = delta_rho(theta),
/// dy = rho^(Q-1) drho dsigma, on dyadic radial panels, summed onto the dual grid with a
/// type-1 NUFFT. Panels are cached, so a dyadic eps ladder costs one panel per rung.
class TruncatedOperator {
 public:
  TruncatedOperator(ProductKernel K, const Grid& grid, TruncationOptions opt = {});

  const ProductKernel& kernel() const noexcept { return K_; }
  const Grid& grid() const noexcept { return grid_; }
  const TruncationOptions& options() const noexcept { return opt_; }

  /// m_eps on the dual grid (FFT order). Throws for eps below options().min_epsilon.
  std::shared_ptr<const std::vector<Complex>> multiplier(double eps) const;
  Field apply(const Field& f, double eps) const;
  /// Real part of the multiplier at xi = 0: the integral of K over |y| >= eps.
  double mass(double eps) const;

 private:
  using Multiplier = std::vector<Complex>;
  Multiplier far_part(double eps) const;
  Multiplier near_panel(double a, double b) const;
  const Multiplier& cached_panel(double a, double b) const;
  double chi(double rho) const;

  ProductKernel K_;
  Grid grid_;
  TruncationOptions opt_;
  Metric metric_;
  struct State;
  std::shared_ptr<State> state_;
};

Field truncated_apply(const ProductKernel& K, const Field& f, double eps, MetricKind metric);

struct SweepRow {
  double epsilon = 0.0;
  /// ||T_eps f||_2 / ||f||_2.
  double l2_ratio = 0.0;
  /// ||T_eps f - T_eps_prev f||_2 / ||f||_2; NaN on the first row.
  double cauchy = 0.0;
};

std::vector<SweepRow> truncation_sweep(const TruncatedOperator& op, const Field& f, std::span<const double> eps);

/// eps_i = 2^-i for i in [first, last].
std::vector<double> dyadic_ladder(int first, int last);

}  // namespace mixhom
