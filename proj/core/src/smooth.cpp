#include "mixhom/smooth.hpp"

#include <cmath>

namespace mixhom {

double bump(double u) noexcept {
  const double a = 1.0 - u * u;
  if (!(a > 0.0)) return 0.0;
  return std::exp(-1.0 / a);
}

double smooth_step(double t) noexcept {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double dyadic_bump(double t) noexcept {
  if (!(t > 0.0)) return 0.0;
  return bump(std::log2(t));
}

double lp_profile(double t) noexcept {
  if (!(t > 0.5 && t < 2.0)) return 0.0;
  const double u = std::log2(t);
  // Only the shifts with |u - j| < 1 contribute, j in {floor(u), floor(u) + 1}.
  const double f = std::floor(u);
  double s = 0.0;
  for (double j = f - 1.0; j <= f + 2.0; j += 1.0) {
    const double b = bump(u - j);
    s += b * b;
  }
  return bump(u) / std::sqrt(s);
}

}  // namespace mixhom
