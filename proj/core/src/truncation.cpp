#include "mixhom/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "mixhom/nufft.hpp"
#include "mixhom/quadrature.hpp"
#include "mixhom/smooth.hpp"
#include "mixhom/sphere.hpp"
#include "mixhom/transform.hpp"

namespace mixhom {

namespace {

using std::numbers::pi;

int clamp_count(double v, int lo, int hi) {
  if (!(v == v)) return lo;
  return static_cast<int>(std::clamp(std::ceil(v), static_cast<double>(lo), static_cast<double>(hi)));
}

}  // namespace

struct TruncatedOperator::State {
  std::mutex mu;
  std::map<std::pair<double, double>, Multiplier> panels;
  std::map<double, std::shared_ptr<const Multiplier>> multipliers;
  std::shared_ptr<const Multiplier> far_fixed;
};

TruncatedOperator::TruncatedOperator(ProductKernel K, const Grid& grid, TruncationOptions opt)
    : K_(std::move(K)),
      grid_(grid),
      opt_(opt),
      metric_(opt.metric, grid.dim()),
      state_(std::make_shared<State>()) {
  if (K_.dim() != grid.dim()) throw InvalidArgument("kernel and grid dimensions differ");
  if (!K_.cutoff()) throw InvalidArgument("truncated operators need the compactly supported kernel");
  if (!(opt_.near_radius > 0.0) || !(opt_.min_epsilon > 0.0)) throw InvalidArgument("invalid truncation radii");
  if (!(opt_.resolution > 0.0)) throw InvalidArgument("resolution multiplier must be positive");
  // The support {|y|_h < 2} spans |y_n| < 4; it must fit inside one period.
  const double S = ProductKernel::kSupport;
  if (grid.half_extent() < S * S)
    throw InvalidArgument("grid half-extent must be at least " + std::to_string(S * S) + " to hold the kernel support");
}

double TruncatedOperator::chi(double rho) const {
  const double R = opt_.near_radius;
  return 1.0 - smooth_step((rho - 0.5 * R) / (0.5 * R));
}

TruncatedOperator::Multiplier TruncatedOperator::far_part(double eps) const {
  const int n = grid_.dim();
  const int N = grid_.samples();
  const double L = grid_.half_extent();
  const double h = grid_.spacing();
  int R = 1;
  auto total = [n](std::size_t m) {
    std::size_t t = 1;
    for (int d = 0; d < n; ++d) t *= m;
    return t;
  };
  while (h / R > opt_.far_spacing && total(static_cast<std::size_t>(2 * N * R)) <= opt_.max_far_points) R *= 2;
  const int M = N * R;
  const double hf = 2.0 * L / M;
  std::vector<Complex> fine(total(static_cast<std::size_t>(M)));

  const double S = ProductKernel::kSupport;
  std::array<int, kMaxDim> lo{}, hi{};
  for (int d = 0; d < n; ++d) {
    const double ext = d == n - 1 ? S * S : S;
    lo[static_cast<std::size_t>(d)] = std::max(0, static_cast<int>(std::ceil((L - ext) / hf)));
    hi[static_cast<std::size_t>(d)] = std::min(M - 1, static_cast<int>(std::floor((L + ext) / hf)));
  }
  std::array<int, kMaxDim> idx = lo;
  Point y(n);
  while (true) {
    std::size_t flat = 0;
    for (int d = 0; d < n; ++d) {
      y[d] = -L + hf * idx[static_cast<std::size_t>(d)];
      flat = flat * static_cast<std::size_t>(M) + static_cast<std::size_t>(idx[static_cast<std::size_t>(d)]);
    }
    const double rho = metric_.norm(y);
    if (rho >= eps && rho > 0.5 * opt_.near_radius) {
      const double w = 1.0 - chi(rho);
      if (w != 0.0) fine[flat] = w * K_(y);
    }
    int d = n - 1;
    while (d >= 0) {
      auto& c = idx[static_cast<std::size_t>(d)];
      if (++c <= hi[static_cast<std::size_t>(d)]) break;
      c = lo[static_cast<std::size_t>(d)];
      --d;
    }
    if (d < 0) break;
  }
  dft_inplace(fine, n, M, -1);

  Multiplier out(grid_.size());
  const double hn = std::pow(hf, n);
  for (std::size_t f = 0; f < out.size(); ++f) {
    const auto k = grid_.unflatten(f);
    std::size_t src = 0;
    int parity = 0;
    for (int d = 0; d < n; ++d) {
      const int m = grid_.centred(k[static_cast<std::size_t>(d)]);
      parity += m;
      src = src * static_cast<std::size_t>(M) + static_cast<std::size_t>((m + M) % M);
    }
    out[f] = fine[src] * ((parity & 1) ? -hn : hn);
  }
  return out;
}

TruncatedOperator::Multiplier TruncatedOperator::near_panel(double a, double b) const {
  const int n = grid_.dim();
  const int Q = metric_.homogeneous_dimension();
  const double xi = pi / grid_.spacing();  // per-axis Nyquist
  const double res = opt_.resolution;
  const double head = std::sqrt(static_cast<double>(n - 1));
  const bool parabolic = opt_.metric == MetricKind::Parabolic;

  // Phase swept across the panel radially and across the sphere at radius b.
  const double radial_phase =
      parabolic ? xi * (head * (b - a) + (b * b - a * a)) : xi * std::sqrt(static_cast<double>(n)) * (b - a);
  const int q_rho = clamp_count(res * (0.75 * radial_phase + 12.0), 8, 400);
  SphereRuleOptions so;
  so.order = 12;
  so.grading = 3.0;
  const double sphere_phase = parabolic ? xi * (head * b + b * b) : xi * b * 0.5 * pi * std::sqrt(2.0);
  so.panels = clamp_count(res * so.grading * sphere_phase / 8.0, 8, 4000);
  so.azimuth = clamp_count(res * (2.0 * xi * b * head + 16.0), 16, 4096);
  const auto sphere = sphere_rule(opt_.metric, n, so);
  const Rule1D radial = gauss_legendre(q_rho, a, b);

  std::vector<double> coords;
  std::vector<double> strengths;
  coords.reserve(radial.size() * sphere.size() * static_cast<std::size_t>(n));
  strengths.reserve(radial.size() * sphere.size());
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double rho = radial.nodes[i];
    const double wr = radial.weights[i] * std::pow(rho, Q - 1) * chi(rho);
    if (wr == 0.0) continue;
    for (const auto& node : sphere) {
      const Point y = metric_.dilate(node.point, rho);
      const double v = K_(y);
      if (v == 0.0) continue;
      for (int d = 0; d < n; ++d) coords.push_back(y[d]);
      strengths.push_back(wr * node.w_invariant * v);
    }
  }
  const int spread = n == 2 ? opt_.nufft_spread : std::min(opt_.nufft_spread, 6);
  return nufft_type1(grid_, coords, strengths, spread);
}

const TruncatedOperator::Multiplier& TruncatedOperator::cached_panel(double a, double b) const {
  const auto key = std::make_pair(a, b);
  if (auto it = state_->panels.find(key); it != state_->panels.end()) return it->second;
  return state_->panels.emplace(key, near_panel(a, b)).first->second;
}

std::shared_ptr<const std::vector<Complex>> TruncatedOperator::multiplier(double eps) const {
  if (!(eps >= opt_.min_epsilon) || !std::isfinite(eps))
    throw InvalidArgument("truncation radius " + std::to_string(eps) + " is below the quadrature floor " +
                          std::to_string(opt_.min_epsilon));
  std::lock_guard lock(state_->mu);
  if (auto it = state_->multipliers.find(eps); it != state_->multipliers.end()) return it->second;

  const double R = opt_.near_radius;
  Multiplier total;
  if (eps <= 0.5 * R) {
    if (!state_->far_fixed) state_->far_fixed = std::make_shared<const Multiplier>(far_part(0.0));
    total = *state_->far_fixed;
  } else {
    total = far_part(eps);
  }
  // Dyadic panels [R 2^-(i+1), R 2^-i] down to eps, the last one clipped.
  double hi = R;
  while (hi > eps) {
    const double lo = std::max(eps, 0.5 * hi);
    const Multiplier& p = cached_panel(lo, hi);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += p[i];
    hi = lo;
  }
  auto ptr = std::make_shared<const Multiplier>(std::move(total));
  state_->multipliers.emplace(eps, ptr);
  return ptr;
}

Field TruncatedOperator::apply(const Field& f, double eps) const {
  if (!(f.grid() == grid_)) throw InvalidArgument("field grid differs from the operator grid");
  return apply_multiplier(f, *multiplier(eps));
}

double TruncatedOperator::mass(double eps) const { return (*multiplier(eps))[0].real(); }

Field truncated_apply(const ProductKernel& K, const Field& f, double eps, MetricKind metric) {
  TruncationOptions opt;
  opt.metric = metric;
  return TruncatedOperator(K, f.grid(), opt).apply(f, eps);
}

std::vector<SweepRow> truncation_sweep(const TruncatedOperator& op, const Field& f, std::span<const double> eps) {
  if (eps.empty()) throw InvalidArgument("truncation sweep needs at least one radius");
  const double fn = lp_norm(f, 2.0);
  if (!(fn > 0.0)) throw InvalidArgument("truncation sweep needs a nonzero field");
  std::vector<SweepRow> rows;
  Field prev(f.grid());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const Field t = op.apply(f, eps[i]);
    SweepRow r;
    r.epsilon = eps[i];
    r.l2_ratio = lp_norm(t, 2.0) / fn;
    r.cauchy = i == 0 ? std::numeric_limits<double>::quiet_NaN() : lp_norm(t - prev, 2.0) / fn;
    rows.push_back(r);
    prev = t;
  }
  return rows;
}

std::vector<double> dyadic_ladder(int first, int last) {
  std::vector<double> out;
  const int step = last >= first ? 1 : -1;
  for (int i = first;; i += step) {
    out.push_back(std::ldexp(1.0, -i));
    if (i == last) break;
  }
  return out;
}

}  // namespace mixhom
