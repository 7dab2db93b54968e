#pragma once

#include <vector>

#include "mixhom/geometry.hpp"

namespace mixhom {

/// Node on a unit sphere {|x| = 1} of a metric, with two measures.
///
/// `w_invariant` is the dilation-invariant measure: dx = rho^(Q-1) drho dsigma
/// with x = delta_rho(theta). `w_euclidean` is the induced surface measure.
/// The two agree on the isotropic sphere.
struct SphereNode {
  Point point;
  double w_invariant;
  double w_euclidean;
};

struct SphereRuleOptions {
  /// Composite panels along the graded radial-like parameter.
  int panels = 8;
  /// Gauss-Legendre order per panel.
  int order = 12;
  /// Grading power p; nodes cluster like u^p at the singular set.
  double grading = 3.0;
  /// Azimuthal trapezoid points (n = 3 only).
  int azimuth = 48;
};

/// Quadrature on the unit sphere of `kind` in R^dim.
///
/// Parabolic: theta = (s, sigma (1 - |s|^2)), s in the unit ball of R^(n-1),
/// sigma = +-1, graded toward s = 0 where theta' vanishes.
/// Isotropic: graded toward the equator x_n = 0.
std::vector<SphereNode> sphere_rule(MetricKind kind, int dim, const SphereRuleOptions& opt = {});

/// Grading power that flattens an |.|^(-sigma) singularity into a smooth integrand.
double grading_for_singularity(double sigma);

}  // namespace mixhom
