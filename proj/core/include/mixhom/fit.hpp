#pragma once

#include <span>

namespace mixhom {

/// Ordinary least squares y = slope x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Requires at least two points with distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace mixhom
