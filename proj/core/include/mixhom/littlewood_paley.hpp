#pragma once

#include <memory>
#include <vector>

#include "mixhom/grid.hpp"

namespace mixhom {

/// Inclusive range of dyadic scales [lo, hi].
struct ScaleRange {
  int lo = 0;
  int hi = 0;
  int count() const noexcept { return hi - lo + 1; }
  bool contains(int j) const noexcept { return j >= lo && j <= hi; }
  friend bool operator==(const ScaleRange&, const ScaleRange&) = default;
};

/// Smooth radial Littlewood-Paley generator for one metric.
///
/// psi_hat(xi) = lp_profile(|xi|), supported on the dyadic annulus
/// 1/2 < |xi| < 2 of the metric; its dilates psi_hat_j(xi) = psi_hat(delta_{2^-j} xi)
/// satisfy sum_j psi_hat_j^2 = 1 pointwise away from xi = 0. psi_hat is real and
/// even, so the spatial generator is real, even and has zero mean.
class Generator {
 public:
  /// Throws InvalidArgument when the grid resolves fewer than three annuli.
  Generator(const Metric& metric, const Grid& grid);

  const Metric& metric() const noexcept { return metric_; }
  const Grid& grid() const noexcept { return grid_; }

  /// Scales whose annulus 2^(j-1) < |xi| < 2^(j+1) meets the nonzero dual grid.
  ScaleRange resolvable() const noexcept { return resolvable_; }
  /// Throws unless `r` is non-empty and inside resolvable().
  void check(ScaleRange r) const;

  /// Metric norm of every dual-grid frequency, FFT order.
  const std::vector<double>& frequency_norms() const noexcept { return tnorm_; }

  /// psi_hat_j on the dual grid, FFT order (cached).
  const std::vector<double>& multiplier(int j) const;
  /// Spatial psi_j = inverse(psi_hat_j); centred at the origin.
  Field spatial(int j) const;

 private:
  Metric metric_;
  Grid grid_;
  std::vector<double> tnorm_;
  ScaleRange resolvable_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

Generator build_generator(const Metric& metric, const Grid& grid);
Field dilate_generator(const Generator& g, int j);

/// max |sum_{j in r} psi_hat_j(xi)^2 - 1| over dual-grid frequencies with 2^lo <= |xi| <= 2^hi.
double partition_deviation(const Generator& g, ScaleRange r);

/// 1 where both metric norms lie in [2^lo, 2^hi] of their ranges, else 0 (FFT order).
std::vector<double> in_band_mask(const Generator& iso, ScaleRange r1, const Generator& par, ScaleRange r2);

/// Sum over (j, k) of (psi_hat^1_j psi_hat^2_k)^2 (FFT order).
std::vector<double> composite_partition(const Generator& iso, ScaleRange r1, const Generator& par, ScaleRange r2);

/// (sum_j |psi_j * f|^2)^(1/2).
Field square_function(const Field& f, const Generator& g, ScaleRange r);

/// (sum_{j,k} |psi_jk * f|^2)^(1/2) with psi_hat_jk = psi_hat^1_j psi_hat^2_k.
Field square_function_com(const Field& f, const Generator& iso, ScaleRange r1, const Generator& par, ScaleRange r2);

/// How the mixed lattice spacing combines the two scales. Max gives
/// a = 2^-max(j,k), b = 2^-max(j,2k); Min uses min instead and aliases.
enum class LatticeConvention { Max, Min };

struct LatticeOptions {
  LatticeConvention convention = LatticeConvention::Max;
  /// Spacings are multiplied by 2^shift (negative refines).
  int shift = 0;
};

/// Lattice steps in grid cells for scale pair (j, k): {step along x', step along x_n}.
/// Spacings below h are clamped to h; spacings above 2L are clamped to 2L.
std::pair<int, int> lattice_steps(const Grid& grid, int j, int k, const LatticeOptions& opt);

/// Discrete square function: (sum_{j,k} sum_I |psi_jk * f(x_I)|^2 chi_I)^(1/2) over lattice
/// rectangles I with left-lower corners x_I anchored at the origin.
Field discrete_square_function_com(const Field& f, const Generator& iso, ScaleRange r1, const Generator& par,
                                   ScaleRange r2, const LatticeOptions& opt = {});

enum class HardyVariant { Isotropic, Parabolic, Composite };

struct HardyContext {
  const Generator* iso = nullptr;
  ScaleRange r1;
  const Generator* par = nullptr;
  ScaleRange r2;
};

/// L^p norm (quasi-norm for p < 1) of the variant's square function of f minus its mean. Requires 0 < p <= 1.
/// Composite uses the discrete composite square function.
double hardy_norm(const Field& f, HardyVariant variant, double p, const HardyContext& ctx);

}  // namespace mixhom
