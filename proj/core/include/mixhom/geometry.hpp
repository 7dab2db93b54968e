#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mixhom {

/// Largest supported ambient dimension.
inline constexpr int kMaxDim = 3;

/// Raised for malformed inputs: dimension mismatches, bad grid sizes, out-of-range scales.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed-capacity point in R^n, n <= kMaxDim. The last coordinate is x_n.
class Point {
 public:
  Point() = default;
  explicit Point(int n);
  Point(std::initializer_list<double> coords);

  int dim() const noexcept { return n_; }
  double& operator[](int i) noexcept { return c_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
  double last() const noexcept { return c_[static_cast<std::size_t>(n_ - 1)]; }
  std::span<const double> coords() const noexcept { return {c_.data(), static_cast<std::size_t>(n_)}; }

  /// Squared Euclidean length of the first n-1 coordinates.
  double head_norm2() const noexcept;

  friend Point operator+(const Point& a, const Point& b);
  friend Point operator-(const Point& a, const Point& b);
  friend Point operator-(const Point& a);
  friend bool operator==(const Point& a, const Point& b) = default;

 private:
  std::array<double, kMaxDim> c_{};
  int n_ = 0;
};

enum class MetricKind { Isotropic, Parabolic };

std::string_view to_string(MetricKind kind);
MetricKind parse_metric_kind(std::string_view name);

/// Quasi-norm with its dilation group.
///
/// Isotropic: |x|_e = (|x'|^2 + x_n^2)^(1/2), dilation x -> d x, Q = n.
/// Parabolic: |x|_h = (|x'|^2 + |x_n|)^(1/2), dilation (x', x_n) -> (d x', d^2 x_n), Q = n + 1.
class Metric {
 public:
  Metric(MetricKind kind, int dim);

  MetricKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  int homogeneous_dimension() const noexcept { return kind_ == MetricKind::Parabolic ? dim_ + 1 : dim_; }

  double norm(const Point& x) const;
  Point dilate(const Point& x, double delta) const;

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  void check(const Point& x) const;
  MetricKind kind_;
  int dim_;
};

inline double isotropic_norm(const Point& x) noexcept {
  return std::sqrt(x.head_norm2() + x.last() * x.last());
}

inline double parabolic_norm(const Point& x) noexcept {
  return std::sqrt(x.head_norm2() + std::abs(x.last()));
}

/// Free-function forms; throw InvalidArgument when x.dim() != m.dim().
double metric_norm(const Point& x, const Metric& m);
Point dilate_point(const Point& x, double delta, const Metric& m);

}  // namespace mixhom
