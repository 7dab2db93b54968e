#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mixhom/profile.hpp"

namespace mixhom {

/// Singular-integral regime of E(x) H(x) with E of isotropic degree -k and H of parabolic degree -l.
enum class Regime { CaseH, CaseE, Subcritical, Invalid };

std::string_view to_string(Regime r);

/// True iff k + l < n + 1 and k + l/2 < n (E H locally integrable at the origin).
bool integrable_locally(double k, double l, int n);

/// CaseH: k + l = n + 1, l > 2. CaseE: k + l/2 = n, l < 2. Equalities to 1e-12.
Regime classify(double k, double l, int n);

/// One summand c E(x) H(x).
struct KernelTerm {
  double coef;
  Profile e;
  Profile h;
};

/// Product kernel K(x) = phi(|x|_h) sum_i c_i E_i(x) H_i(x) with
///   E_i(x) = |x|_e^-k  pE_i(x / |x|_e),
///   H_i(x) = |x|_h^-l  pH_i(delta_{1/|x|_h} x),
/// and the cutoff phi = 1 on |x|_h <= 1, 0 on |x|_h >= 2.
class ProductKernel {
 public:
  /// How E and H are evaluated. BoundaryH freezes E at (x', 0); BoundaryE freezes H at (0, x_n).
  enum class Mode { Full, BoundaryH, BoundaryE };

  ProductKernel(int dim, double k, double l, Profile e, Profile h);

  int dim() const noexcept { return dim_; }
  double k() const noexcept { return k_; }
  double l() const noexcept { return l_; }
  Regime regime() const noexcept { return classify(k_, l_, dim_); }
  bool cutoff() const noexcept { return cutoff_; }
  Mode mode() const noexcept { return mode_; }
  const std::vector<KernelTerm>& terms() const noexcept { return terms_; }

  ProductKernel with_cutoff(bool on) const;
  ProductKernel with_mode(Mode m) const;
  /// K_h for CaseH, K_e for CaseE; throws otherwise.
  ProductKernel boundary_kernel() const;
  /// Adds c E H; merges with an existing term carrying the same profile ids.
  ProductKernel plus_term(double coef, const Profile& e, const Profile& h) const;

  /// Throws InvalidArgument at the origin or on dimension mismatch.
  double operator()(const Point& x) const;
  /// Value without the cutoff.
  double homogeneous(const Point& x) const;
  /// The regime's boundary function on its unit sphere (theta on the parabolic sphere for
  /// CaseH, on the isotropic sphere for CaseE).
  double boundary(const Point& theta) const;
  /// Cutoff radius in |.|_h beyond which K vanishes.
  static constexpr double kSupport = 2.0;

  std::string describe() const;

 private:
  double evaluate(const Point& x, Mode mode) const;
  double e_factor(const Point& x, const Profile& p, Mode mode) const;
  double h_factor(const Point& x, const Profile& p, Mode mode) const;
  int dim_;
  double k_, l_;
  std::vector<KernelTerm> terms_;
  bool cutoff_ = true;
  Mode mode_ = Mode::Full;
};

double eval_kernel(const ProductKernel& K, const Point& x);

/// phi(r) = 1 - smooth_step(r - 1).
double kernel_cutoff(double r) noexcept;

enum class SphereMeasure { Invariant, Euclidean };

std::string_view to_string(SphereMeasure m);

struct CancellationOptions {
  SphereMeasure measure = SphereMeasure::Invariant;
  int panels = 16;
  int order = 16;
};

struct CancellationReport {
  /// Integral of the boundary function against the chosen measure.
  double integral = 0.0;
  /// integral / surface.
  double mean = 0.0;
  double surface = 0.0;
  /// |integral(panels) - integral(2 panels)|.
  double error_estimate = 0.0;
  MetricKind sphere = MetricKind::Parabolic;
  SphereMeasure measure = SphereMeasure::Invariant;
};

/// Mean of the regime's boundary function. Throws for Subcritical or Invalid kernels.
CancellationReport spherical_mean(const ProductKernel& K, const CancellationOptions& opt = {});

/// K - (m / m_ref) R where R carries constant profiles and m, m_ref are the boundary integrals.
ProductKernel enforce_cancellation(const ProductKernel& K, const CancellationOptions& opt = {});

/// Integral of |K| over eps <= |x|_metric <= outer.
double shell_mass(const ProductKernel& K, MetricKind metric, double eps, double outer, int refine = 1);

struct HormanderPair {
  Point x1;
  Point x2;
};

struct HormanderOptions {
  MetricKind metric = MetricKind::Parabolic;
  /// Node multiplier; 2 doubles both radial and angular resolution.
  int refine = 1;
  /// Outer radius as a multiple of |x1 - x2| when the cutoff is off.
  double outer_factor = 1024.0;
};

struct HormanderResult {
  double constant = 0.0;
  std::vector<double> values;
};

/// max over pairs of integral_{|x1 - y| >= 2 |x1 - x2|} |K(x1 - y) - K(x2 - y)| dy.
HormanderResult hormander_constant(const ProductKernel& K, std::span<const HormanderPair> pairs,
                                   const HormanderOptions& opt = {});

/// `count` pairs with x1 uniform in [-1, 1]^n and |x2 - x1|_metric = scales[i % scales.size()]
/// in a random direction.
std::vector<HormanderPair> sample_hormander_pairs(int dim, MetricKind metric, int count, std::span<const double> scales,
                                                  std::uint64_t seed);

}  // namespace mixhom
