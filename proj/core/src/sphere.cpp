#include "mixhom/sphere.hpp"

#include <cmath>
#include <numbers>

#include "mixhom/quadrature.hpp"

namespace mixhom {

namespace {

using std::numbers::pi;

std::vector<SphereNode> parabolic_2d(const SphereRuleOptions& o) {
  const Rule1D s = power_graded(0.0, 1.0, o.panels, o.order, o.grading);
  std::vector<SphereNode> out;
  out.reserve(4 * s.size());
  for (double sign_s : {-1.0, 1.0}) {
    for (double sigma : {-1.0, 1.0}) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        const double si = s.nodes[i];
        const double w = s.weights[i];
        out.push_back({Point{sign_s * si, sigma * (1.0 - si * si)}, 2.0 * w, std::sqrt(1.0 + 4.0 * si * si) * w});
      }
    }
  }
  return out;
}

std::vector<SphereNode> parabolic_3d(const SphereRuleOptions& o) {
  const Rule1D r = power_graded(0.0, 1.0, o.panels, o.order, o.grading);
  const double dphi = 2.0 * pi / o.azimuth;
  std::vector<SphereNode> out;
  out.reserve(2 * r.size() * static_cast<std::size_t>(o.azimuth));
  for (double sigma : {-1.0, 1.0}) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double ri = r.nodes[i];
      const double w = r.weights[i] * ri * dphi;
      for (int a = 0; a < o.azimuth; ++a) {
        const double phi = (a + 0.5) * dphi;
        out.push_back({Point{ri * std::cos(phi), ri * std::sin(phi), sigma * (1.0 - ri * ri)}, 2.0 * w,
                       std::sqrt(1.0 + 4.0 * ri * ri) * w});
      }
    }
  }
  return out;
}

std::vector<SphereNode> isotropic_2d(const SphereRuleOptions& o) {
  // phi in [0, pi/2], clustered at phi = 0 (the x_n = 0 equator), mirrored into four quadrants.
  const Rule1D phi = power_graded(0.0, 0.5 * pi, o.panels, o.order, o.grading);
  std::vector<SphereNode> out;
  out.reserve(4 * phi.size());
  for (double sx : {-1.0, 1.0}) {
    for (double sy : {-1.0, 1.0}) {
      for (std::size_t i = 0; i < phi.size(); ++i) {
        const double p = phi.nodes[i];
        out.push_back({Point{sx * std::cos(p), sy * std::sin(p)}, phi.weights[i], phi.weights[i]});
      }
    }
  }
  return out;
}

std::vector<SphereNode> isotropic_3d(const SphereRuleOptions& o) {
  // t = x_n in [-1, 1], clustered at t = 0; d omega = dt dphi.
  const Rule1D t = power_graded(0.0, 1.0, o.panels, o.order, o.grading);
  const double dphi = 2.0 * pi / o.azimuth;
  std::vector<SphereNode> out;
  out.reserve(2 * t.size() * static_cast<std::size_t>(o.azimuth));
  for (double sign : {-1.0, 1.0}) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double ti = t.nodes[i];
      const double rr = std::sqrt(std::max(0.0, 1.0 - ti * ti));
      const double w = t.weights[i] * dphi;
      for (int a = 0; a < o.azimuth; ++a) {
        const double phi = (a + 0.5) * dphi;
        out.push_back({Point{rr * std::cos(phi), rr * std::sin(phi), sign * ti}, w, w});
      }
    }
  }
  return out;
}

}  // namespace

std::vector<SphereNode> sphere_rule(MetricKind kind, int dim, const SphereRuleOptions& opt) {
  if (dim < 2 || dim > 3) throw InvalidArgument("sphere rules exist for n = 2 and n = 3 only");
  if (opt.panels < 1 || opt.order < 1 || opt.azimuth < 3) throw InvalidArgument("sphere rule resolution too small");
  if (kind == MetricKind::Parabolic) return dim == 2 ? parabolic_2d(opt) : parabolic_3d(opt);
  return dim == 2 ? isotropic_2d(opt) : isotropic_3d(opt);
}

double grading_for_singularity(double sigma) {
  if (!(sigma < 1.0)) throw InvalidArgument("singularity exponent must be < 1 to be integrable");
  return std::max(2.0, 2.0 / (1.0 - std::max(0.0, sigma)));
}

}  // namespace mixhom
