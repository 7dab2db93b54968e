#include "mixhom/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "mixhom/quadrature.hpp"
#include "mixhom/smooth.hpp"
#include "mixhom/sphere.hpp"

namespace mixhom {

namespace {

constexpr double kRegimeTol = 1e-12;

double unit_draw(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

double gaussian_draw(std::mt19937_64& eng) {
  // Box-Muller on portable uniforms.
  const double u1 = std::max(unit_draw(eng), 0x1.0p-60);
  const double u2 = unit_draw(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

double singular_grading(const ProductKernel& K) {
  if (K.regime() == Regime::CaseH) {
    // |theta'|^-k against ds in R^(n-1); polar coordinates absorb n - 2 powers.
    return grading_for_singularity(K.k() - (K.dim() - 2));
  }
  return grading_for_singularity(0.5 * K.l());
}

MetricKind boundary_sphere(const ProductKernel& K) {
  switch (K.regime()) {
    case Regime::CaseH:
      return MetricKind::Parabolic;
    case Regime::CaseE:
      return MetricKind::Isotropic;
    default:
      throw InvalidArgument("kernel " + K.describe() + " has no boundary function (regime " +
                            std::string(to_string(K.regime())) + ")");
  }
}

double integrate_boundary(const ProductKernel& K, const CancellationOptions& opt, int panels, double* surface) {
  const MetricKind sphere = boundary_sphere(K);
  SphereRuleOptions so;
  so.panels = panels;
  so.order = opt.order;
  so.grading = singular_grading(K);
  so.azimuth = 8 * panels;
  const auto rule = sphere_rule(sphere, K.dim(), so);
  double s = 0.0, area = 0.0;
  for (const auto& node : rule) {
    const double w = opt.measure == SphereMeasure::Invariant ? node.w_invariant : node.w_euclidean;
    s += w * K.boundary(node.point);
    area += w;
  }
  if (surface) *surface = area;
  return s;
}

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::CaseH:
      return "CaseH";
    case Regime::CaseE:
      return "CaseE";
    case Regime::Subcritical:
      return "Subcritical";
    case Regime::Invalid:
      return "Invalid";
  }
  return "Invalid";
}

std::string_view to_string(SphereMeasure m) { return m == SphereMeasure::Invariant ? "invariant" : "euclidean"; }

bool integrable_locally(double k, double l, int n) { return k + l < n + 1 && k + 0.5 * l < n; }

Regime classify(double k, double l, int n) {
  if (!std::isfinite(k) || !std::isfinite(l)) return Regime::Invalid;
  if (std::abs(k + l - (n + 1)) <= kRegimeTol && l > 2.0) return Regime::CaseH;
  if (std::abs(k + 0.5 * l - n) <= kRegimeTol && l < 2.0) return Regime::CaseE;
  if (integrable_locally(k, l, n)) return Regime::Subcritical;
  return Regime::Invalid;
}

double kernel_cutoff(double r) noexcept { return 1.0 - smooth_step(r - 1.0); }

ProductKernel::ProductKernel(int dim, double k, double l, Profile e, Profile h) : dim_(dim), k_(k), l_(l) {
  if (dim < 2 || dim > kMaxDim) throw InvalidArgument("kernel dimension must be 2 or 3");
  if (!std::isfinite(k) || !std::isfinite(l) || k < 0.0 || l < 0.0)
    throw InvalidArgument("kernel degrees must be finite and non-negative");
  terms_.push_back({1.0, std::move(e), std::move(h)});
}

ProductKernel ProductKernel::with_cutoff(bool on) const {
  ProductKernel r = *this;
  r.cutoff_ = on;
  return r;
}

ProductKernel ProductKernel::with_mode(Mode m) const {
  ProductKernel r = *this;
  r.mode_ = m;
  return r;
}

ProductKernel ProductKernel::boundary_kernel() const {
  switch (regime()) {
    case Regime::CaseH:
      return with_mode(Mode::BoundaryH);
    case Regime::CaseE:
      return with_mode(Mode::BoundaryE);
    default:
      throw InvalidArgument("boundary kernel needs a CaseH or CaseE kernel");
  }
}

ProductKernel ProductKernel::plus_term(double coef, const Profile& e, const Profile& h) const {
  ProductKernel r = *this;
  for (auto& t : r.terms_) {
    if (t.e.id() == e.id() && t.h.id() == h.id()) {
      t.coef += coef;
      return r;
    }
  }
  r.terms_.push_back({coef, e, h});
  return r;
}

double ProductKernel::e_factor(const Point& x, const Profile& p, Mode mode) const {
  Point w = x;
  if (mode == Mode::BoundaryH) w[dim_ - 1] = 0.0;
  const double r = isotropic_norm(w);
  if (r == 0.0) return std::numeric_limits<double>::infinity();
  Point omega(dim_);
  for (int i = 0; i < dim_; ++i) omega[i] = w[i] / r;
  return std::pow(r, -k_) * p(omega);
}

double ProductKernel::h_factor(const Point& x, const Profile& p, Mode mode) const {
  Point w = x;
  if (mode == Mode::BoundaryE)
    for (int i = 0; i + 1 < dim_; ++i) w[i] = 0.0;
  const double rho = parabolic_norm(w);
  if (rho == 0.0) return std::numeric_limits<double>::infinity();
  Point theta(dim_);
  for (int i = 0; i + 1 < dim_; ++i) theta[i] = w[i] / rho;
  theta[dim_ - 1] = w[dim_ - 1] / (rho * rho);
  return std::pow(rho, -l_) * p(theta);
}

double ProductKernel::homogeneous(const Point& x) const { return evaluate(x, mode_); }

double ProductKernel::evaluate(const Point& x, Mode mode) const {
  if (x.dim() != dim_) throw InvalidArgument("kernel evaluated at a point of the wrong dimension");
  bool zero = true;
  for (int i = 0; i < dim_; ++i) zero = zero && x[i] == 0.0;
  if (zero) throw InvalidArgument("kernel is singular at the origin");
  double s = 0.0;
  for (const auto& t : terms_) {
    if (t.coef == 0.0) continue;
    s += t.coef * e_factor(x, t.e, mode) * h_factor(x, t.h, mode);
  }
  return s;
}

double ProductKernel::operator()(const Point& x) const {
  if (!cutoff_) return homogeneous(x);
  if (x.dim() != dim_) throw InvalidArgument("kernel evaluated at a point of the wrong dimension");
  const double r = parabolic_norm(x);
  if (r >= kSupport) return 0.0;
  return kernel_cutoff(r) * homogeneous(x);
}

double ProductKernel::boundary(const Point& theta) const {
  switch (regime()) {
    case Regime::CaseH:
      return evaluate(theta, Mode::BoundaryH);
    case Regime::CaseE:
      return evaluate(theta, Mode::BoundaryE);
    default:
      throw InvalidArgument("boundary function needs a CaseH or CaseE kernel");
  }
}

std::string ProductKernel::describe() const {
  std::ostringstream os;
  os << "K(n=" << dim_ << ", k=" << k_ << ", l=" << l_ << ";";
  for (const auto& t : terms_) os << " " << t.coef << "*[" << t.e.id() << "," << t.h.id() << "]";
  os << ")";
  return os.str();
}

double eval_kernel(const ProductKernel& K, const Point& x) { return K(x); }

CancellationReport spherical_mean(const ProductKernel& K, const CancellationOptions& opt) {
  CancellationReport r;
  r.sphere = boundary_sphere(K);
  r.measure = opt.measure;
  const double coarse = integrate_boundary(K, opt, opt.panels, nullptr);
  r.integral = integrate_boundary(K, opt, 2 * opt.panels, &r.surface);
  r.mean = r.integral / r.surface;
  r.error_estimate = std::abs(r.integral - coarse);
  return r;
}

ProductKernel enforce_cancellation(const ProductKernel& K, const CancellationOptions& opt) {
  boundary_sphere(K);  // rejects kernels without a boundary function
  const Profile one_e = make_profile("one", MetricKind::Isotropic, K.dim());
  const Profile one_h = make_profile("one", MetricKind::Parabolic, K.dim());
  ProductKernel ref(K.dim(), K.k(), K.l(), one_e, one_h);
  const double m = integrate_boundary(K, opt, 2 * opt.panels, nullptr);
  const double m_ref = integrate_boundary(ref, opt, 2 * opt.panels, nullptr);
  if (m_ref == 0.0) throw InvalidArgument("reference boundary integral vanishes");
  return K.plus_term(-m / m_ref, one_e, one_h);
}

double shell_mass(const ProductKernel& K, MetricKind metric, double eps, double outer, int refine) {
  if (!(eps > 0.0 && outer > eps)) throw InvalidArgument("shell_mass needs 0 < eps < outer");
  const Metric m(metric, K.dim());
  const int Q = m.homogeneous_dimension();
  const Rule1D radial = dyadic_gauss(eps, outer, 16 * refine);
  SphereRuleOptions so;
  so.panels = 16 * refine;
  so.order = 12;
  so.azimuth = 32 * refine;
  const auto sphere = sphere_rule(metric, K.dim(), so);
  double s = 0.0;
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double rho = radial.nodes[i];
    double ang = 0.0;
    for (const auto& node : sphere) ang += node.w_invariant * std::abs(K(m.dilate(node.point, rho)));
    s += radial.weights[i] * std::pow(rho, Q - 1) * ang;
  }
  return s;
}

HormanderResult hormander_constant(const ProductKernel& K, std::span<const HormanderPair> pairs,
                                   const HormanderOptions& opt) {
  if (pairs.empty()) throw InvalidArgument("hormander_constant needs at least one pair");
  if (opt.refine < 1) throw InvalidArgument("refinement factor must be >= 1");
  const Metric m(opt.metric, K.dim());
  const int Q = m.homogeneous_dimension();
  SphereRuleOptions so;
  so.panels = 24 * opt.refine;
  so.order = 8;
  so.grading = 2.0;
  so.azimuth = 24 * opt.refine;
  const auto sphere = sphere_rule(opt.metric, K.dim(), so);
  // Support radius of K in the integration metric.
  const double support = opt.metric == MetricKind::Parabolic
                             ? ProductKernel::kSupport
                             : std::hypot(ProductKernel::kSupport, ProductKernel::kSupport * ProductKernel::kSupport);
  HormanderResult res;
  for (const auto& pr : pairs) {
    if (pr.x1.dim() != K.dim() || pr.x2.dim() != K.dim()) throw InvalidArgument("pair dimension mismatch");
    const Point d = pr.x2 - pr.x1;
    const double r = m.norm(d);
    if (!(r > 0.0)) throw InvalidArgument("hormander pair with coincident points");
    const double inner = 2.0 * r;
    const double outer = K.cutoff() ? support + r : opt.outer_factor * r;
    if (!(outer > inner)) {
      res.values.push_back(0.0);
      continue;
    }
    Rule1D radial = composite_gauss(inner, std::min(outer, 2.0 * inner), 4 * opt.refine, 8);
    if (outer > 2.0 * inner) radial.append(dyadic_gauss(2.0 * inner, outer, 10 * opt.refine));
    double s = 0.0;
    for (std::size_t i = 0; i < radial.size(); ++i) {
      const double rho = radial.nodes[i];
      double ang = 0.0;
      for (const auto& node : sphere) {
        const Point z = m.dilate(node.point, rho);
        ang += node.w_invariant * std::abs(K(-z) - K(d - z));
      }
      s += radial.weights[i] * std::pow(rho, Q - 1) * ang;
    }
    res.values.push_back(s);
  }
  res.constant = *std::max_element(res.values.begin(), res.values.end());
  return res;
}

std::vector<HormanderPair> sample_hormander_pairs(int dim, MetricKind metric, int count, std::span<const double> scales,
                                                  std::uint64_t seed) {
  if (count < 1 || scales.empty()) throw InvalidArgument("need a positive pair count and at least one scale");
  const Metric m(metric, dim);
  std::mt19937_64 eng(seed);
  std::vector<HormanderPair> out;
  for (int i = 0; i < count; ++i) {
    Point x1(dim), dir(dim);
    for (int c = 0; c < dim; ++c) x1[c] = 2.0 * unit_draw(eng) - 1.0;
    double nrm = 0.0;
    do {
      for (int c = 0; c < dim; ++c) dir[c] = gaussian_draw(eng);
      nrm = m.norm(dir);
    } while (!(nrm > 1e-8));
    const Point unit = m.dilate(dir, 1.0 / nrm);
    const double s = scales[static_cast<std::size_t>(i) % scales.size()];
    out.push_back({x1, x1 + m.dilate(unit, s)});
  }
  return out;
}

}  // namespace mixhom
