#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "mixhom/geometry.hpp"

namespace mixhom {

using Complex = std::complex<double>;

/// Periodic grid on [-L, L)^n with N samples per axis, spacing h = 2L/N.
///
/// Storage is row-major with x_n (the last axis) fastest. Axis index i maps to
/// x = -L + i h, so x = 0 sits at i = N/2. The dual grid holds xi = (pi/L) m
/// with the centred integer m in [-N/2, N/2); storage uses FFT order, so FFT
/// index k corresponds to m = k for k < N/2 and m = k - N otherwise.
class Grid {
 public:
  Grid(int dim, int samples, double half_extent);

  int dim() const noexcept { return dim_; }
  int samples() const noexcept { return n_; }
  double half_extent() const noexcept { return half_; }
  double spacing() const noexcept { return 2.0 * half_ / n_; }
  double cell_volume() const noexcept;
  double volume() const noexcept;
  std::size_t size() const noexcept { return size_; }
  /// Frequency spacing pi / L.
  double frequency_step() const noexcept;

  std::array<int, kMaxDim> unflatten(std::size_t flat) const noexcept;
  std::size_t flatten(const std::array<int, kMaxDim>& idx) const noexcept;

  Point coordinate(std::size_t flat) const;
  /// Centred integer frequency index m for FFT index k.
  int centred(int k) const noexcept { return k < n_ / 2 ? k : k - n_; }
  Point frequency(std::size_t flat) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int dim_;
  int n_;
  double half_;
  std::size_t size_;
};

/// Real samples on a Grid.
class Field {
 public:
  explicit Field(const Grid& grid);
  Field(const Grid& grid, std::vector<double> values);
  /// Samples f at every grid coordinate.
  static Field sample(const Grid& grid, const std::function<double(const Point&)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return v_.size(); }
  double operator[](std::size_t i) const noexcept { return v_[i]; }
  double& operator[](std::size_t i) noexcept { return v_[i]; }
  const std::vector<double>& values() const noexcept { return v_; }
  std::vector<double>& values() noexcept { return v_; }

  double max_abs() const noexcept;
  double sum() const noexcept;
  /// h^n times the sum of samples.
  double integral() const noexcept;
  double mean() const noexcept;

  Field abs() const;
  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double s) noexcept;
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, double s) { return a *= s; }
  friend Field operator*(double s, Field a) { return a *= s; }

 private:
  void check_same(const Field& o) const;
  Grid grid_;
  std::vector<double> v_;
};

/// Complex samples on the dual grid, FFT order.
class Spectrum {
 public:
  explicit Spectrum(const Grid& grid);
  Spectrum(const Grid& grid, std::vector<Complex> values);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return v_.size(); }
  Complex operator[](std::size_t i) const noexcept { return v_[i]; }
  Complex& operator[](std::size_t i) noexcept { return v_[i]; }
  const std::vector<Complex>& values() const noexcept { return v_; }
  std::vector<Complex>& values() noexcept { return v_; }

  /// Pointwise product with a real multiplier in FFT order.
  Spectrum& operator*=(const std::vector<double>& m);
  Spectrum& operator*=(const std::vector<Complex>& m);

 private:
  Grid grid_;
  std::vector<Complex> v_;
};

/// (h^n sum |f|^p)^(1/p); p = infinity gives max |f|. Requires p >= 1.
double lp_norm(const Field& f, double p);

/// h^n * #{cells : |f| > alpha}.
double weak_distribution(const Field& f, double alpha);

/// Minimal-image displacement x - y on the torus.
Point torus_difference(const Grid& grid, const Point& x, const Point& y);

}  // namespace mixhom
