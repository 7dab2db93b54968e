#pragma once

#include <span>
#include <vector>

#include "mixhom/truncation.hpp"

namespace mixhom {

/// Radii h ratio^i up to the half-extent L. The first radius h selects the single cell.
std::vector<double> maximal_radii(const Grid& grid, double ratio = 2.0, double r_max = 0.0);

/// Discrete Hardy-Littlewood maximal function: sup over radii of the average of |f| over
/// the torus ball {y : |x - y|_m < r} (minimal-image distance, strict inequality).
Field hl_maximal(const Field& f, const Metric& m, std::span<const double> radii);

/// Strong maximal function: sup over (r, s) in radii^2 of the average of |f| over
/// {|y' - x'| < r} x {|y_n - x_n| < s}.
Field strong_maximal(const Field& f, std::span<const double> radii);

/// sup over the eps ladder of |T_eps f|, pointwise.
Field maximal_truncation(const TruncatedOperator& op, const Field& f, std::span<const double> eps);

struct CotlarOptions {
  double delta = 2.0;
  double p = 2.0;
  /// Metric of the outer Hardy-Littlewood maximal functions.
  MetricKind metric = MetricKind::Parabolic;
  std::vector<double> radii;
  std::vector<double> eps;
};

struct CotlarResult {
  /// max over admissible cells of T* f / RHS.
  double constant = 0.0;
  std::size_t cells = 0;
  Field ratio;
};

/// Fits C in T* f <= C (M(|T f|^delta)^(1/delta) + M((M_S f)^p)^(1/p) + M_S f), where
/// T f is the smallest-eps truncation. Cells whose right side is below 1e-12 ||f||_inf are skipped.
CotlarResult cotlar_fit(const TruncatedOperator& op, const Field& f, const CotlarOptions& opt);

struct WeakTypeRow {
  double alpha = 0.0;
  /// |{|T f| > alpha}|.
  double measure = 0.0;
  /// alpha |{|T f| > alpha}| / ||f||_1.
  double statistic = 0.0;
};

std::vector<WeakTypeRow> weak_type_probe(const TruncatedOperator& op, const Field& f, std::span<const double> alphas,
                                         double eps);

}  // namespace mixhom
