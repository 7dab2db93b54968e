#include <gtest/gtest.h>

#include <cmath>

#include "mixhom/calderon.hpp"
#include "mixhom/fields.hpp"
#include "mixhom/littlewood_paley.hpp"
#include "mixhom/transform.hpp"
#include "oracles.hpp"

using namespace mixhom;

namespace {

struct Desk {
  Grid grid{2, 128, 8.0};
  Generator iso{Metric(MetricKind::Isotropic, 2), grid};
  Generator par{Metric(MetricKind::Parabolic, 2), grid};
  ScaleRange r1{-2, 3};
  ScaleRange r2{-2, 3};
};

const Desk& desk() {
  static const Desk d;
  return d;
}

double rel_l2_gap(const Field& a, const Field& ref) { return lp_norm(a - ref, 2.0) / lp_norm(ref, 2.0); }

}  // namespace

TEST(Generator, PartitionOfUnityBothMetrics) {
  const auto& d = desk();
  EXPECT_LT(partition_deviation(d.iso, d.iso.resolvable()), 1e-10);
  EXPECT_LT(partition_deviation(d.par, d.par.resolvable()), 1e-10);
  EXPECT_LT(partition_deviation(d.par, {0, 2}), 1e-10);
}

TEST(Generator, MultiplierVanishesOutsideAnnulus) {
  const auto& d = desk();
  for (const auto* g : {&d.iso, &d.par}) {
    const auto& t = g->frequency_norms();
    for (int j : {-1, 0, 2}) {
      const auto& m = g->multiplier(j);
      EXPECT_EQ(m[0], 0.0);
      for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] <= std::ldexp(0.5, j) || t[i] >= std::ldexp(2.0, j)) {
          EXPECT_EQ(m[i], 0.0);
        }
    }
  }
}

TEST(Generator, SpatialGeneratorIsMeanZeroAndReal) {
  const auto& d = desk();
  for (const auto* g : {&d.iso, &d.par}) {
    for (int j = g->resolvable().lo; j <= g->resolvable().hi; ++j) {
      const Field psi = g->spatial(j);
      EXPECT_LT(std::abs(psi.integral()), 1e-12);
      // Imaginary part of the inverse transform of a real even multiplier.
      Spectrum s(d.grid);
      const auto& m = g->multiplier(j);
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = m[i];
      double imag = 0.0;
      for (const auto& c : inverse_complex(s)) imag = std::max(imag, std::abs(c.imag()));
      EXPECT_LT(imag, 1e-10 * psi.max_abs());
    }
  }
}

TEST(Generator, DilationIdentity) {
  const auto& d = desk();
  const Field base = d.par.spatial(0);
  const Field again = dilate_generator(d.par, 0);
  for (std::size_t i = 0; i < base.size(); ++i) EXPECT_NEAR(again[i], base[i], 1e-12);
  EXPECT_THROW(d.iso.multiplier(40), InvalidArgument);
}

namespace {

// max over j in {-1, 1} of | ||psi_j||_2 / (2^(jQ/2) ||psi_0||_2) - 1 |.
double scaling_error(MetricKind kind, double L) {
  const Generator g(Metric(kind, 2), Grid(2, static_cast<int>(16 * L), L));
  const int Q = g.metric().homogeneous_dimension();
  const double n0 = lp_norm(g.spatial(0), 2.0);
  double err = 0.0;
  for (int j : {-1, 1}) err = std::max(err, std::abs(lp_norm(g.spatial(j), 2.0) / (std::pow(2.0, 0.5 * j * Q) * n0) - 1.0));
  return err;
}

}  // namespace

TEST(Generator, ScalingIdentityConvergesWithBoxSize) {
  for (auto kind : {MetricKind::Isotropic, MetricKind::Parabolic}) {
    const double e16 = scaling_error(kind, 16.0), e64 = scaling_error(kind, 64.0);
    EXPECT_LT(e64, 0.25 * e16);
    EXPECT_LT(e64, 1e-3);
  }
}

// Stated tolerance 1e-8. The grid norm is a Riemann sum of |psi_j hat|^2, so the identity
// is limited by the periodised tail of psi_j. Expected to fail; see the README.
TEST(Generator, ScalingIdentityAtStatedTolerance) {
  for (auto kind : {MetricKind::Isotropic, MetricKind::Parabolic}) EXPECT_LT(scaling_error(kind, 64.0), 1e-8);
}

TEST(Generator, RejectsUnresolvableRanges) {
  const auto& d = desk();
  EXPECT_THROW(d.iso.check({-30, 0}), InvalidArgument);
  EXPECT_THROW(d.iso.check({2, 1}), InvalidArgument);
}

TEST(SquareFunction, PlancherelForInBandFields) {
  const auto& d = desk();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Field f = random_in_band(d.iso, d.r1, d.par, d.r2, seed);
    const double nf = lp_norm(f, 2.0);
    EXPECT_NEAR(lp_norm(square_function(f, d.iso, d.r1), 2.0), nf, 1e-6 * nf);
    EXPECT_NEAR(lp_norm(square_function(f, d.par, d.r2), 2.0), nf, 1e-6 * nf);
    EXPECT_NEAR(lp_norm(square_function_com(f, d.iso, d.r1, d.par, d.r2), 2.0), nf, 1e-4 * nf);
  }
}

TEST(SquareFunction, ZeroAndNonNegative) {
  const auto& d = desk();
  const Field zero(d.grid);
  EXPECT_EQ(square_function(zero, d.iso, d.r1).max_abs(), 0.0);
  EXPECT_EQ(square_function_com(zero, d.iso, d.r1, d.par, d.r2).max_abs(), 0.0);
  EXPECT_EQ(discrete_square_function_com(zero, d.iso, d.r1, d.par, d.r2).max_abs(), 0.0);
  for (const auto& nf : smoke_suite(d.grid)) {
    for (double v : square_function_com(nf.field, d.iso, d.r1, d.par, d.r2).values()) EXPECT_GE(v, 0.0);
    for (double v : discrete_square_function_com(nf.field, d.iso, d.r1, d.par, d.r2).values()) EXPECT_GE(v, 0.0);
  }
}

TEST(SquareFunction, SingleScaleFieldConcentrates) {
  const auto& d = desk();
  for (const auto* g : {&d.iso, &d.par}) {
    const int j0 = 1;
    const Field f = g->spatial(j0);
    double total = 0.0, near = 0.0;
    for (int j = g->resolvable().lo; j <= g->resolvable().hi; ++j) {
      const double e = std::pow(lp_norm(apply_multiplier(f, g->multiplier(j)), 2.0), 2);
      total += e;
      if (std::abs(j - j0) <= 1) near += e;
    }
    EXPECT_GE(near / total, 0.95);
  }
}

TEST(SquareFunction, CompositeConcentratesNearPurePair) {
  const auto& d = desk();
  const Field f = psi_jk(d.iso, d.par, 1, 0);
  double total = 0.0, near = 0.0;
  for (int j = d.r1.lo; j <= d.r1.hi; ++j)
    for (int k = d.r2.lo; k <= d.r2.hi; ++k) {
      const double e = std::pow(lp_norm(apply_multiplier(f, psi_jk_multiplier(d.iso, d.par, j, k)), 2.0), 2);
      total += e;
      if (std::abs(j - 1) <= 1 && std::abs(k) <= 1) near += e;
    }
  EXPECT_GE(near / total, 0.95);
}

TEST(SquareFunction, DiscreteAndContinuousCompositeAreComparable) {
  const auto& d = desk();
  for (const auto& nf : smoke_suite(d.grid)) {
    const double a = lp_norm(discrete_square_function_com(nf.field, d.iso, d.r1, d.par, d.r2), 2.0);
    const double b = lp_norm(square_function_com(nf.field, d.iso, d.r1, d.par, d.r2), 2.0);
    EXPECT_GE(a / b, 0.5) << nf.name;
    EXPECT_LE(a / b, 2.0) << nf.name;
  }
}

TEST(Hardy, NormIsAbsolutelyHomogeneous) {
  const auto& d = desk();
  const HardyContext ctx{&d.iso, d.r1, &d.par, d.r2};
  const Field f = smoke_suite(d.grid)[2].field;
  for (auto v : {HardyVariant::Isotropic, HardyVariant::Parabolic, HardyVariant::Composite}) {
    const double a = hardy_norm(f, v, 1.0, ctx);
    EXPECT_NEAR(hardy_norm(-3.0 * f, v, 1.0, ctx), 3.0 * a, 1e-10 * a);
    EXPECT_EQ(hardy_norm(Field(d.grid), v, 1.0, ctx), 0.0);
    const double q = hardy_norm(f, v, 0.5, ctx);
    EXPECT_NEAR(hardy_norm(-3.0 * f, v, 0.5, ctx), 3.0 * q, 1e-10 * q);
  }
  EXPECT_THROW(hardy_norm(f, HardyVariant::Composite, 1.5, ctx), InvalidArgument);
  EXPECT_THROW(hardy_norm(f, HardyVariant::Composite, 0.0, ctx), InvalidArgument);
}

TEST(Hardy, DiscreteCompositeNormIsResolutionStable) {
  const Grid coarse(2, 128, 8.0), fine(2, 256, 8.0);
  auto norm = [](const Grid& g) {
    const Generator iso(Metric(MetricKind::Isotropic, 2), g), par(Metric(MetricKind::Parabolic, 2), g);
    const HardyContext ctx{&iso, {-2, 3}, &par, {-2, 3}};
    return hardy_norm(smoke_suite(g)[0].field, HardyVariant::Composite, 1.0, ctx);
  };
  const double a = norm(coarse), b = norm(fine);
  EXPECT_LT(std::abs(a - b) / b, 0.05);
}

TEST(Lattice, MaxConventionSpacingsAndClamp) {
  const Grid g(2, 128, 8.0);  // h = 1/8
  LatticeOptions opt;
  // a = 2^-max(j,k), b = 2^-max(j,2k) in cells of h.
  EXPECT_EQ(lattice_steps(g, 0, 0, opt), std::make_pair(8, 8));
  EXPECT_EQ(lattice_steps(g, 1, 0, opt), std::make_pair(4, 4));
  EXPECT_EQ(lattice_steps(g, 0, 1, opt), std::make_pair(4, 2));
  EXPECT_EQ(lattice_steps(g, 5, 5, opt), std::make_pair(1, 1));
  opt.convention = LatticeConvention::Min;
  EXPECT_EQ(lattice_steps(g, 0, 1, opt), std::make_pair(8, 8));
  opt = {};
  opt.shift = 1;
  EXPECT_EQ(lattice_steps(g, 0, 0, opt), std::make_pair(16, 16));
}

TEST(Calderon, ReconstructsInBandFields) {
  const auto& d = desk();
  LatticeOptions coarse;
  coarse.shift = 1;
  for (std::uint64_t seed : {3u, 4u}) {
    const Field f = random_in_band(d.iso, d.r1, d.par, d.r2, seed);
    const auto rec = calderon_reconstruct(f, d.iso, d.r1, d.par, d.r2);
    EXPECT_LT(rec.report.residual, 1e-3);
    EXPECT_LT(rel_l2_gap(rec.field, f), 1e-3);
    EXPECT_NEAR(rec.report.frame_energy_ratio, 1.0, 1e-6);
    EXPECT_GT(calderon_reconstruct(f, d.iso, d.r1, d.par, d.r2, coarse).report.residual, rec.report.residual);
  }
}

TEST(Calderon, PsiJkIsProductOfFactors) {
  const auto& d = desk();
  const auto m = psi_jk_multiplier(d.iso, d.par, 1, 0);
  const auto& a = d.iso.multiplier(1);
  const auto& b = d.par.multiplier(0);
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_DOUBLE_EQ(m[i], a[i] * b[i]);
  const Field direct = convolve(d.iso.spatial(1), d.par.spatial(0));
  EXPECT_LT(rel_l2_gap(psi_jk(d.iso, d.par, 1, 0), direct), 1e-12);
}

TEST(Fields, SmokeSuiteIsMeanZero) {
  const Grid g(2, 64, 8.0);
  const auto s = smoke_suite(g, 5);
  EXPECT_EQ(s.size(), 5u);
  for (const auto& nf : s) EXPECT_LT(std::abs(nf.field.mean()), 1e-14 * nf.field.max_abs()) << nf.name;
  const Field b = parabolic_bump(g, 0.5);
  EXPECT_NEAR(lp_norm(b, 1.0), 1.0, 1e-14);
}
