#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mixhom/geometry.hpp"

namespace mixhom {

/// Angular profile: a function on the unit sphere of one metric, identified by a string id.
class Profile {
 public:
  Profile(std::string id, std::function<double(const Point&)> fn);

  const std::string& id() const noexcept { return id_; }
  double operator()(const Point& theta) const { return fn_(theta); }

 private:
  std::string id_;
  std::function<double(const Point&)> fn_;
};

/// Built-in ids (theta is a point on the unit sphere of `sphere`):
///   one          1
///   odd          theta_n
///   harmonic     theta_1 (first spherical harmonic in x')
///   tilted       1 + theta_n / 2
///   random:SEED  1 + sum a_i theta_i + sum_{i<=j} b_ij theta_i theta_j, |a|, |b| <= 1/4
///   csv:PATH     see load_csv_profile
Profile make_profile(std::string_view id, MetricKind sphere, int dim);

/// Ids accepted by make_profile without a file argument.
std::vector<std::string> catalog_ids();

/// Tabulated profile for n = 2. Each non-comment row is `angle,value`, angles strictly
/// increasing in [0, 2 pi), at least four rows. Interpolation is a periodic cubic spline
/// in the angle. The angle of theta is atan2(theta_2, theta_1) on the isotropic circle;
/// on the parabolic circle theta = (cos phi, sign(sin phi) sin^2 phi).
Profile load_csv_profile(const std::string& path, MetricKind sphere, int dim);

/// Angle parameter of a unit-sphere point in n = 2, in [0, 2 pi).
double sphere_angle(const Point& theta, MetricKind sphere);

/// Periodic cubic spline through (x_i, y_i) with period `period`.
class PeriodicSpline {
 public:
  PeriodicSpline(std::vector<double> x, std::vector<double> y, double period);
  double operator()(double t) const;

 private:
  std::vector<double> x_, y_, m_;
  double period_;
};

}  // namespace mixhom
