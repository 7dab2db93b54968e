#pragma once

// Reference computations used only by tests. They share containers with the library
// but none of its algorithms: no FFTW, no quadrature rules, no sphere parameterisations.

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "mixhom/grid.hpp"

namespace mixhom::oracle {

/// Seeded generator for hand-rolled property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(eng_); }
  Point point(int dim, double lo, double hi);
  Field field(const Grid& grid, double lo, double hi);
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// h^n sum_x f(x) exp(-i xi.x) by direct summation, FFT order.
std::vector<std::complex<double>> direct_transform(const Field& f);

/// h^n sum_y f(y) g(x - y) with periodic wrap, by direct summation.
Field direct_convolution(const Field& f, const Field& g);

/// Average of |f| over cells whose minimal-image metric distance to cell `at` is < r.
double direct_ball_average(const Field& f, std::size_t at, bool parabolic, double r);

/// Integral of a function over {lo <= rho <= hi} by a Cartesian midpoint rule on the box
/// [-B, B]^(n-1) x [-C, C] with `cells` cells per unit length; rho is the metric norm.
double cartesian_shell_integral(int dim, const std::function<double(const Point&)>& g,
                                const std::function<double(const Point&)>& rho, double lo, double hi, double B,
                                double C, int cells);

struct MonteCarlo {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Mean of b over the unit parabolic sphere with the dilation-invariant measure, from uniform
/// samples of the shell 1 <= |x|_h <= 2 projected by x -> delta_{1/|x|_h} x.
MonteCarlo parabolic_sphere_mean(int dim, const std::function<double(const Point&)>& b, int samples,
                                 std::uint64_t seed);

/// (pi / (a + b))^(n/2) exp(-a b / (a + b) |x|^2): convolution of exp(-a|x|^2) and exp(-b|x|^2).
double gaussian_convolution(int dim, double a, double b, const Point& x);

}  // namespace mixhom::oracle
