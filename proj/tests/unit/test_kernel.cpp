#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "mixhom/kernel.hpp"
#include "mixhom/profile.hpp"
#include "oracles.hpp"

using namespace mixhom;
using std::numbers::pi;

namespace {

ProductKernel canonical(double k = 0.25) {
  return {2, k, 3.0 - k, make_profile("tilted", MetricKind::Isotropic, 2),
          make_profile("odd", MetricKind::Parabolic, 2)};
}

ProductKernel control(double k = 0.25) {
  return {2, k, 3.0 - k, make_profile("one", MetricKind::Isotropic, 2), make_profile("one", MetricKind::Parabolic, 2)};
}

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Regime, Classification) {
  EXPECT_EQ(classify(0.25, 2.75, 2), Regime::CaseH);
  EXPECT_EQ(classify(1.5, 1.0, 2), Regime::CaseE);
  EXPECT_EQ(classify(0.5, 1.0, 2), Regime::Subcritical);
  EXPECT_EQ(classify(2.0, 2.0, 2), Regime::Invalid);
  EXPECT_TRUE(integrable_locally(0.5, 1.0, 2));
  EXPECT_FALSE(integrable_locally(0.25, 2.75, 2));
  EXPECT_EQ(to_string(Regime::CaseH), "CaseH");
}

TEST(Kernel, FactorsAreHomogeneous) {
  oracle::Rng rng(50);
  const Metric iso(MetricKind::Isotropic, 2), par(MetricKind::Parabolic, 2);
  // E alone (l = 0) is isotropic of degree -k; H alone (k = 0) is parabolic of degree -l.
  const ProductKernel E(2, 0.7, 0.0, make_profile("random:3", MetricKind::Isotropic, 2),
                        make_profile("one", MetricKind::Parabolic, 2));
  const ProductKernel H(2, 0.0, 2.3, make_profile("one", MetricKind::Isotropic, 2),
                        make_profile("random:4", MetricKind::Parabolic, 2));
  for (int t = 0; t < 300; ++t) {
    const Point x = rng.point(2, -2.0, 2.0);
    const double d = std::exp(rng.uniform(-3.0, 3.0));
    const double e0 = E.homogeneous(x), e1 = E.homogeneous(iso.dilate(x, d));
    EXPECT_NEAR(e1, std::pow(d, -0.7) * e0, 1e-12 * std::abs(e1) + 1e-300);
    const double h0 = H.homogeneous(x), h1 = H.homogeneous(par.dilate(x, d));
    EXPECT_NEAR(h1, std::pow(d, -2.3) * h0, 1e-12 * std::abs(h1) + 1e-300);
  }
}

TEST(Kernel, BoundaryKernelIsParabolicallyHomogeneous) {
  oracle::Rng rng(51);
  const Metric par(MetricKind::Parabolic, 2);
  const ProductKernel Kh = canonical().boundary_kernel().with_cutoff(false);
  for (int t = 0; t < 300; ++t) {
    const Point x = rng.point(2, -2.0, 2.0);
    const double d = std::exp(rng.uniform(-3.0, 3.0));
    const double a = Kh(x), b = Kh(par.dilate(x, d));
    EXPECT_NEAR(b, std::pow(d, -3.0) * a, 1e-12 * std::abs(b));
  }
}

TEST(Kernel, CutoffAndSingularities) {
  const ProductKernel K = canonical();
  EXPECT_THROW(K(Point{0.0, 0.0}), InvalidArgument);
  EXPECT_THROW(K(Point{1.0, 0.0, 0.0}), InvalidArgument);
  EXPECT_EQ(K(Point{2.5, 0.0}), 0.0);
  EXPECT_EQ(K(Point{0.0, 4.5}), 0.0);
  const Point inside{0.3, 0.2};
  EXPECT_DOUBLE_EQ(K(inside), K.homogeneous(inside));
  EXPECT_DOUBLE_EQ(kernel_cutoff(0.5), 1.0);
  EXPECT_DOUBLE_EQ(kernel_cutoff(2.0), 0.0);
  EXPECT_THROW(ProductKernel(2, -1.0, 1.0, make_profile("one", MetricKind::Isotropic, 2),
                             make_profile("one", MetricKind::Parabolic, 2)),
               InvalidArgument);
}

TEST(Cancellation, CanonicalKernelIsCancellativeControlIsNot) {
  EXPECT_LT(std::abs(spherical_mean(canonical()).mean), 1e-12);
  const auto c = spherical_mean(control());
  EXPECT_GT(c.mean, 0.1);
  EXPECT_LT(c.error_estimate, 1e-8 * std::abs(c.integral));
}

TEST(Cancellation, SphericalMeanMatchesMonteCarlo) {
  // K_h(theta) = |theta'|^-k pE(theta'/|theta'|, 0) pH(theta) with a non-cancellative profile.
  const ProductKernel K(2, 0.25, 2.75, make_profile("tilted", MetricKind::Isotropic, 2),
                        make_profile("random:9", MetricKind::Parabolic, 2));
  const auto q = spherical_mean(K);
  const auto mc = oracle::parabolic_sphere_mean(2, [&](const Point& t) { return K.boundary(t); }, 400000, 77);
  EXPECT_LT(std::abs(q.mean - mc.mean), 3.0 * mc.standard_error) << q.mean << " vs " << mc.mean;
}

TEST(Cancellation, InvariantAndEuclideanMeasuresDiffer) {
  const ProductKernel K(2, 0.25, 2.75, make_profile("one", MetricKind::Isotropic, 2),
                        make_profile("random:2", MetricKind::Parabolic, 2));
  CancellationOptions inv, euc;
  euc.measure = SphereMeasure::Euclidean;
  const auto a = spherical_mean(K, inv), b = spherical_mean(K, euc);
  EXPECT_NEAR(a.surface, 8.0, 1e-10);
  EXPECT_NEAR(b.surface, 2.0 * std::sqrt(5.0) + std::asinh(2.0), 1e-10);
  EXPECT_GT(std::abs(a.mean - b.mean), 1e-3);
  // Both measures vanish on the odd profile by symmetry.
  EXPECT_LT(std::abs(spherical_mean(canonical(), euc).mean), 1e-12);
}

TEST(Cancellation, EnforceIsIdempotent) {
  const ProductKernel K(2, 0.25, 2.75, make_profile("random:5", MetricKind::Isotropic, 2),
                        make_profile("random:6", MetricKind::Parabolic, 2));
  ASSERT_GT(std::abs(spherical_mean(K).mean), 1e-3);
  const ProductKernel once = enforce_cancellation(K);
  const ProductKernel twice = enforce_cancellation(once);
  EXPECT_LT(std::abs(spherical_mean(once).mean), 1e-12);
  EXPECT_EQ(once.terms().size(), twice.terms().size());
  oracle::Rng rng(52);
  for (int t = 0; t < 200; ++t) {
    const Point x = rng.point(2, -1.0, 1.0);
    EXPECT_NEAR(twice(x), once(x), 1e-12 * (1.0 + std::abs(once(x))));
  }
}

TEST(Cancellation, SubcriticalKernelsHaveNoBoundaryFunction) {
  const ProductKernel K(2, 0.5, 1.0, make_profile("one", MetricKind::Isotropic, 2),
                        make_profile("one", MetricKind::Parabolic, 2));
  EXPECT_THROW(spherical_mean(K), InvalidArgument);
  EXPECT_THROW(K.boundary_kernel(), InvalidArgument);
}

TEST(Kernel, ShellMassMatchesCartesianOracle) {
  const ProductKernel K = control();
  const double q = shell_mass(K, MetricKind::Parabolic, 0.5, 2.0);
  const double c = oracle::cartesian_shell_integral(
      2, [&](const Point& x) { return std::abs(K(x)); }, [](const Point& x) { return parabolic_norm(x); }, 0.5, 2.0,
      2.0, 4.0, 800);
  EXPECT_LT(std::abs(q - c) / c, 2e-3);
}

TEST(Hormander, BoundaryKernelConstantIsScaleInvariant) {
  const ProductKernel Kh = canonical().boundary_kernel().with_cutoff(false);
  const Metric par(MetricKind::Parabolic, 2);
  const std::vector<double> scales{0.25};
  const auto pairs = sample_hormander_pairs(2, MetricKind::Parabolic, 6, scales, 9);
  HormanderOptions opt;
  const auto base = hormander_constant(Kh, pairs, opt);
  std::vector<HormanderPair> scaled;
  for (const auto& p : pairs) scaled.push_back({par.dilate(p.x1, 4.0), par.dilate(p.x2, 4.0)});
  const auto big = hormander_constant(Kh, scaled, opt);
  for (std::size_t i = 0; i < pairs.size(); ++i) EXPECT_NEAR(big.values[i], base.values[i], 1e-9 * base.values[i]);
}

TEST(Hormander, StableUnderRefinement) {
  const std::vector<double> scales{0.125, 0.5};
  const auto pairs = sample_hormander_pairs(2, MetricKind::Parabolic, 8, scales, 3);
  HormanderOptions a, b;
  b.refine = 2;
  const double ca = hormander_constant(canonical(), pairs, a).constant;
  const double cb = hormander_constant(canonical(), pairs, b).constant;
  EXPECT_GT(ca, 0.0);
  EXPECT_LT(std::abs(ca - cb) / cb, 0.2);
  EXPECT_THROW(hormander_constant(canonical(), {}, a), InvalidArgument);
}

TEST(Profile, CatalogAndErrors) {
  for (const auto& id : catalog_ids()) EXPECT_NO_THROW(make_profile(id, MetricKind::Parabolic, 2));
  EXPECT_THROW(make_profile("nope", MetricKind::Parabolic, 2), InvalidArgument);
  EXPECT_THROW(make_profile("random:x", MetricKind::Parabolic, 2), InvalidArgument);
  const Profile r1 = make_profile("random:7", MetricKind::Parabolic, 2);
  const Profile r2 = make_profile("random:7", MetricKind::Parabolic, 2);
  EXPECT_EQ(r1(Point{0.6, 0.64}), r2(Point{0.6, 0.64}));
}

TEST(Profile, PeriodicSplineInterpolatesAndIsPeriodic) {
  std::vector<double> x, y;
  for (int i = 0; i < 32; ++i) {
    x.push_back(2.0 * pi * i / 32.0);
    y.push_back(std::cos(x.back()));
  }
  const PeriodicSpline s(x, y, 2.0 * pi);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(s(x[i]), y[i], 1e-14);
  for (double t : {0.1, 1.3, 4.0}) {
    EXPECT_NEAR(s(t), std::cos(t), 1e-5);
    EXPECT_NEAR(s(t + 2.0 * pi), s(t), 1e-13);
  }
  EXPECT_THROW(PeriodicSpline({0.0, 1.0}, {1.0, 1.0}, 2.0 * pi), InvalidArgument);
}

TEST(Profile, CsvTableLoadsAndReportsBadRows) {
  const auto good = write_temp("mixhom_good_profile.csv",
                               "angle,value\n0,1\n1.5707963267948966,2\n3.141592653589793,1\n4.71238898038469,0\n");
  const Profile p = load_csv_profile(good.string(), MetricKind::Isotropic, 2);
  EXPECT_NEAR(p(Point{0.0, 1.0}), 2.0, 1e-12);
  EXPECT_NEAR(p(Point{1.0, 0.0}), 1.0, 1e-12);
  const Profile q = make_profile("csv:" + good.string(), MetricKind::Parabolic, 2);
  EXPECT_NEAR(q(Point{0.0, -1.0}), 0.0, 1e-12);

  const auto bad = write_temp("mixhom_bad_profile.csv", "0,1\n1,2\n0.5,3\n2,4\n");
  try {
    load_csv_profile(bad.string(), MetricKind::Isotropic, 2);
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
  const auto short_table = write_temp("mixhom_short_profile.csv", "0,1\n1,2\n");
  EXPECT_THROW(load_csv_profile(short_table.string(), MetricKind::Isotropic, 2), InvalidArgument);
  const auto nonfinite = write_temp("mixhom_nan_profile.csv", "0,1\n1,nan\n2,1\n3,1\n");
  EXPECT_THROW(load_csv_profile(nonfinite.string(), MetricKind::Isotropic, 2), InvalidArgument);
  EXPECT_THROW(load_csv_profile(good.string(), MetricKind::Isotropic, 3), InvalidArgument);
  EXPECT_THROW(load_csv_profile("/nonexistent/profile.csv", MetricKind::Isotropic, 2), InvalidArgument);
}
