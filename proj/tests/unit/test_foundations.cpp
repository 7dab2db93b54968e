#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mixhom/fit.hpp"
#include "mixhom/grid.hpp"
#include "mixhom/nufft.hpp"
#include "mixhom/quadrature.hpp"
#include "mixhom/smooth.hpp"
#include "mixhom/sphere.hpp"
#include "mixhom/transform.hpp"
#include "oracles.hpp"

using namespace mixhom;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

// ---------------------------------------------------------------- metrics

TEST(Metric, NormsAreHomogeneousUnderTheirDilations) {
  oracle::Rng rng(11);
  for (int n : {2, 3}) {
    for (auto kind : {MetricKind::Isotropic, MetricKind::Parabolic}) {
      const Metric m(kind, n);
      for (int t = 0; t < 500; ++t) {
        const Point x = rng.point(n, -3.0, 3.0);
        const double d = std::exp(rng.uniform(-4.0, 4.0));
        EXPECT_NEAR(m.norm(m.dilate(x, d)), d * m.norm(x), 1e-12 * d * m.norm(x));
      }
    }
  }
}

TEST(Metric, DilationsFormAGroup) {
  oracle::Rng rng(12);
  const Metric m(MetricKind::Parabolic, 3);
  for (int t = 0; t < 200; ++t) {
    const Point x = rng.point(3, -2.0, 2.0);
    const double a = rng.uniform(0.1, 4.0), b = rng.uniform(0.1, 4.0);
    const Point lhs = m.dilate(m.dilate(x, a), b);
    const Point rhs = m.dilate(x, a * b);
    for (int d = 0; d < 3; ++d) EXPECT_NEAR(lhs[d], rhs[d], 1e-12 * (1.0 + std::abs(rhs[d])));
  }
}

TEST(Metric, ParabolicNormSatisfiesTriangleInequality) {
  oracle::Rng rng(13);
  for (int t = 0; t < 2000; ++t) {
    const Point x = rng.point(2, -3.0, 3.0), y = rng.point(2, -3.0, 3.0);
    EXPECT_LE(parabolic_norm(x + y), parabolic_norm(x) + parabolic_norm(y) + 1e-12);
  }
}

TEST(Metric, HomogeneousDimensionAndParsing) {
  EXPECT_EQ(Metric(MetricKind::Isotropic, 2).homogeneous_dimension(), 2);
  EXPECT_EQ(Metric(MetricKind::Parabolic, 2).homogeneous_dimension(), 3);
  EXPECT_EQ(Metric(MetricKind::Parabolic, 3).homogeneous_dimension(), 4);
  EXPECT_EQ(parse_metric_kind("parabolic"), MetricKind::Parabolic);
  EXPECT_EQ(parse_metric_kind("isotropic"), MetricKind::Isotropic);
  EXPECT_THROW(parse_metric_kind("euclid"), InvalidArgument);
  EXPECT_THROW(metric_norm(Point{1.0, 2.0, 3.0}, Metric(MetricKind::Isotropic, 2)), InvalidArgument);
}

// ---------------------------------------------------------------- grid and transforms

TEST(Grid, RejectsBadShapes) {
  EXPECT_THROW(Grid(1, 16, 1.0), InvalidArgument);
  EXPECT_THROW(Grid(2, 24, 1.0), InvalidArgument);
  EXPECT_THROW(Grid(2, 2, 1.0), InvalidArgument);
  EXPECT_THROW(Grid(2, 16, -1.0), InvalidArgument);
}

TEST(Grid, IndexingPutsOriginAtHalfN) {
  const Grid g(2, 16, 4.0);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.5);
  const std::size_t origin = g.flatten({8, 8, 0});
  const Point x = g.coordinate(origin);
  EXPECT_DOUBLE_EQ(x[0], 0.0);
  EXPECT_DOUBLE_EQ(x[1], 0.0);
  for (std::size_t i = 0; i < g.size(); i += 37) EXPECT_EQ(g.flatten(g.unflatten(i)), i);
  EXPECT_EQ(g.centred(3), 3);
  EXPECT_EQ(g.centred(12), -4);
  EXPECT_NEAR(g.frequency(g.flatten({1, 15, 0}))[1], -pi / 4.0, 1e-15);
}

TEST(Transform, ForwardMatchesDirectSummation) {
  for (int n : {2, 3}) {
    const Grid g(n, 8, 2.0);
    oracle::Rng rng(20 + n);
    const Field f = rng.field(g, -1.0, 1.0);
    const auto ref = oracle::direct_transform(f);
    const Spectrum s = forward(f);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      err = std::max(err, std::abs(s[i] - ref[i]));
      scale = std::max(scale, std::abs(ref[i]));
    }
    EXPECT_LT(err, 1e-12 * scale);
  }
}

TEST(Transform, InverseRoundTrip) {
  const Grid g(3, 16, 3.0);
  oracle::Rng rng(22);
  const Field f = rng.field(g, -1.0, 1.0);
  const Field back = inverse(forward(f));
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(back[i], f[i], 1e-13);
}

TEST(Transform, ConvolutionMatchesDirectSummation) {
  const Grid g(2, 16, 2.0);
  oracle::Rng rng(23);
  const Field a = rng.field(g, -1.0, 1.0), b = rng.field(g, -1.0, 1.0);
  const Field fast = convolve(a, b);
  const Field slow = oracle::direct_convolution(a, b);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(fast[i], slow[i], 1e-12);
}

TEST(Transform, GaussianConvolutionClosedForm) {
  const Grid g(2, 128, 8.0);
  const Field a = Field::sample(g, [](const Point& x) { return std::exp(-(x[0] * x[0] + x[1] * x[1])); });
  const Field b = Field::sample(g, [](const Point& x) { return std::exp(-2.0 * (x[0] * x[0] + x[1] * x[1])); });
  const Field c = convolve(a, b);
  for (std::size_t i = 0; i < g.size(); i += 97)
    EXPECT_NEAR(c[i], oracle::gaussian_convolution(2, 1.0, 2.0, g.coordinate(i)), 1e-10);
}

TEST(Field, GaussianL2Norm) {
  const Grid g(2, 128, 8.0);
  const Field f = Field::sample(g, [](const Point& x) { return std::exp(-(x[0] * x[0] + x[1] * x[1])); });
  EXPECT_NEAR(lp_norm(f, 2.0), std::sqrt(pi / 2.0), 1e-12);
  EXPECT_NEAR(lp_norm(f, 1.0), pi, 1e-12);
  EXPECT_DOUBLE_EQ(lp_norm(f, INFINITY), 1.0);
  EXPECT_THROW(lp_norm(f, 0.5), InvalidArgument);
}

TEST(Field, WeakDistributionCountsCells) {
  const Grid g(2, 8, 2.0);
  Field f(g);
  f[3] = 2.0;
  f[5] = -3.0;
  EXPECT_DOUBLE_EQ(weak_distribution(f, 1.0), 2.0 * g.cell_volume());
  EXPECT_DOUBLE_EQ(weak_distribution(f, 2.0), g.cell_volume());
  EXPECT_DOUBLE_EQ(weak_distribution(f, 3.0), 0.0);
}

TEST(Field, TorusDifferenceUsesMinimalImage) {
  const Grid g(2, 16, 4.0);
  const Point d = torus_difference(g, Point{3.5, 0.0}, Point{-3.5, 0.0});
  EXPECT_NEAR(d[0], -1.0, 1e-15);
}

// ---------------------------------------------------------------- smooth profiles

TEST(Smooth, LpProfileSquaresSumToOne) {
  oracle::Rng rng(30);
  for (int t = 0; t < 1000; ++t) {
    const double x = std::exp(rng.uniform(-6.0, 6.0));
    double s = 0.0;
    for (int j = -12; j <= 12; ++j) s += std::pow(lp_profile(std::ldexp(x, -j)), 2);
    EXPECT_NEAR(s, 1.0, 1e-14);
  }
  EXPECT_EQ(lp_profile(0.5), 0.0);
  EXPECT_EQ(lp_profile(2.0), 0.0);
  EXPECT_GT(lp_profile(1.0), 0.0);
}

TEST(Smooth, StepIsMonotoneAndSaturates) {
  EXPECT_EQ(smooth_step(-0.1), 0.0);
  EXPECT_EQ(smooth_step(1.1), 1.0);
  EXPECT_NEAR(smooth_step(0.5), 0.5, 1e-15);
  double prev = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = smooth_step(i / 100.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

// ---------------------------------------------------------------- quadrature

TEST(Quadrature, GaussLegendreIsExactForPolynomials) {
  for (int q : {1, 4, 12, 40}) {
    const Rule1D r = gauss_legendre(q, 0.0, 2.0);
    for (int deg = 0; deg < 2 * q; ++deg)
      EXPECT_NEAR(r.integrate([deg](double x) { return std::pow(x, deg); }), std::pow(2.0, deg + 1) / (deg + 1),
                  1e-12 * std::pow(2.0, deg + 1));
  }
  EXPECT_THROW(gauss_legendre(0), InvalidArgument);
}

TEST(Quadrature, GradedRuleHandlesEndpointSingularity) {
  const Rule1D r = power_graded(0.0, 1.0, 8, 12, 4.0);
  EXPECT_NEAR(r.integrate([](double x) { return std::pow(x, -0.75); }), 4.0, 1e-10);
  const Rule1D d = dyadic_gauss(1e-6, 1.0, 12);
  EXPECT_NEAR(d.integrate([](double x) { return 1.0 / x; }), std::log(1e6), 1e-10);
}

TEST(Sphere, SurfaceMeasures) {
  SphereRuleOptions o;
  o.panels = 16;
  o.order = 16;
  auto total = [](const std::vector<SphereNode>& rule, bool invariant) {
    double s = 0.0;
    for (const auto& n : rule) s += invariant ? n.w_invariant : n.w_euclidean;
    return s;
  };
  const auto iso2 = sphere_rule(MetricKind::Isotropic, 2, o);
  EXPECT_NEAR(total(iso2, true), 2.0 * pi, 1e-12);
  const auto iso3 = sphere_rule(MetricKind::Isotropic, 3, o);
  EXPECT_NEAR(total(iso3, false), 4.0 * pi, 1e-10);
  // Invariant parabolic surface equals Q |B_h(1)|: 3 * 8/3 in the plane, 4 * pi/4 in space.
  const auto par2 = sphere_rule(MetricKind::Parabolic, 2, o);
  EXPECT_NEAR(total(par2, true), 8.0, 1e-12);
  EXPECT_NEAR(total(par2, false), 2.0 * std::sqrt(5.0) + std::asinh(2.0), 1e-10);
  const auto par3 = sphere_rule(MetricKind::Parabolic, 3, o);
  EXPECT_NEAR(total(par3, true), 4.0 * pi, 1e-10);
  for (const auto& n : par2) EXPECT_NEAR(parabolic_norm(n.point), 1.0, 1e-13);
  for (const auto& n : iso3) EXPECT_NEAR(isotropic_norm(n.point), 1.0, 1e-13);
}

TEST(Sphere, InvariantMeasureMatchesShellVolume) {
  // Integral of x_1^2 over 1 <= |x|_h <= 2 via the polar formula against a Cartesian oracle.
  const auto rule = sphere_rule(MetricKind::Parabolic, 2, {});
  double ang = 0.0;
  for (const auto& n : rule) ang += n.w_invariant * n.point[0] * n.point[0];
  const double polar = ang * (std::pow(2.0, 5) - 1.0) / 5.0;  // rho^(Q-1) rho^2 from 1 to 2
  const double cart = oracle::cartesian_shell_integral(
      2, [](const Point& x) { return x[0] * x[0]; }, [](const Point& x) { return parabolic_norm(x); }, 1.0, 2.0, 2.0,
      4.0, 400);
  EXPECT_LT(rel(polar, cart), 2e-3);
}

// ---------------------------------------------------------------- nufft and fit

TEST(Nufft, MatchesDirectSum) {
  for (int n : {2, 3}) {
    const Grid g(n, n == 2 ? 32 : 16, 4.0);
    oracle::Rng rng(40 + n);
    std::vector<double> coords, w;
    for (int p = 0; p < 200; ++p) {
      for (int d = 0; d < n; ++d) coords.push_back(rng.uniform(-1.5, 1.5));
      w.push_back(rng.uniform(-1.0, 1.0));
    }
    const auto fast = nufft_type1(g, coords, w);
    const auto slow = direct_type1(g, coords, w);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < fast.size(); ++i) {
      err = std::max(err, std::abs(fast[i] - slow[i]));
      scale = std::max(scale, std::abs(slow[i]));
    }
    EXPECT_LT(err, 1e-9 * scale);
  }
}

TEST(Fit, RecoversLine) {
  const std::vector<double> x{0, 1, 2, 3, 4}, y{1, 3, 5, 7, 9};
  const LineFit f = fit_line(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.r2, 1.0, 1e-14);
  const std::vector<double> same{1, 1};
  EXPECT_THROW(fit_line(same, same), InvalidArgument);
}
