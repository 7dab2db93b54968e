#include "mixhom/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "mixhom/smooth.hpp"
#include "mixhom/transform.hpp"

namespace mixhom {

struct Generator::Cache {
  std::mutex mu;
  std::map<int, std::vector<double>> multipliers;
};

Generator::Generator(const Metric& metric, const Grid& grid)
    : metric_(metric), grid_(grid), cache_(std::make_shared<Cache>()) {
  if (metric.dim() != grid.dim()) throw InvalidArgument("generator metric and grid dimensions differ");
  tnorm_.resize(grid.size());
  double tmin = std::numeric_limits<double>::infinity(), tmax = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = metric.norm(grid.frequency(i));
    tnorm_[i] = t;
    if (t > 0.0) tmin = std::min(tmin, t);
    tmax = std::max(tmax, t);
  }
  // Annulus j meets the grid iff 2^(j+1) > tmin and 2^(j-1) < tmax.
  resolvable_.lo = static_cast<int>(std::floor(std::log2(tmin))) ;
  while (std::ldexp(1.0, resolvable_.lo + 1) <= tmin) ++resolvable_.lo;
  while (std::ldexp(1.0, resolvable_.lo) > tmin) --resolvable_.lo;
  resolvable_.hi = static_cast<int>(std::ceil(std::log2(tmax)));
  while (std::ldexp(1.0, resolvable_.hi - 1) >= tmax) --resolvable_.hi;
  while (std::ldexp(1.0, resolvable_.hi) < tmax) ++resolvable_.hi;
  if (resolvable_.count() < 3) throw InvalidArgument("grid resolves fewer than three dyadic annuli");
}

void Generator::check(ScaleRange r) const {
  if (r.lo > r.hi) throw InvalidArgument("scale range is empty");
  if (r.lo < resolvable_.lo || r.hi > resolvable_.hi)
    throw InvalidArgument("scale range [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) +
                          "] exceeds the resolvable range [" + std::to_string(resolvable_.lo) + ", " +
                          std::to_string(resolvable_.hi) + "]");
}

const std::vector<double>& Generator::multiplier(int j) const {
  if (!resolvable_.contains(j)) throw InvalidArgument("scale " + std::to_string(j) + " is not resolvable on this grid");
  std::lock_guard lock(cache_->mu);
  auto it = cache_->multipliers.find(j);
  if (it != cache_->multipliers.end()) return it->second;
  std::vector<double> m(tnorm_.size());
  const double s = std::ldexp(1.0, -j);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = lp_profile(s * tnorm_[i]);
  return cache_->multipliers.emplace(j, std::move(m)).first->second;
}

Field Generator::spatial(int j) const {
  Spectrum s(grid_);
  const auto& m = multiplier(j);
  for (std::size_t i = 0; i < m.size(); ++i) s[i] = m[i];
  return inverse(s);
}

Generator build_generator(const Metric& metric, const Grid& grid) { return Generator(metric, grid); }

Field dilate_generator(const Generator& g, int j) { return g.spatial(j); }

double partition_deviation(const Generator& g, ScaleRange r) {
  g.check(r);
  const auto& t = g.frequency_norms();
  const double lo = std::ldexp(1.0, r.lo), hi = std::ldexp(1.0, r.hi);
  std::vector<double> sum(t.size(), 0.0);
  for (int j = r.lo; j <= r.hi; ++j) {
    const auto& m = g.multiplier(j);
    for (std::size_t i = 0; i < t.size(); ++i) sum[i] += m[i] * m[i];
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] >= lo && t[i] <= hi) dev = std::max(dev, std::abs(sum[i] - 1.0));
  return dev;
}

std::vector<double> in_band_mask(const Generator& iso, ScaleRange r1, const Generator& par, ScaleRange r2) {
  if (!(iso.grid() == par.grid())) throw InvalidArgument("generators live on different grids");
  const auto& te = iso.frequency_norms();
  const auto& th = par.frequency_norms();
  std::vector<double> mask(te.size(), 0.0);
  for (std::size_t i = 0; i < te.size(); ++i) {
    const bool in_e = te[i] >= std::ldexp(1.0, r1.lo) && te[i] <= std::ldexp(1.0, r1.hi);
    const bool in_h = th[i] >= std::ldexp(1.0, r2.lo) && th[i] <= std::ldexp(1.0, r2.hi);
    mask[i] = (in_e && in_h) ? 1.0 : 0.0;
  }
  return mask;
}

std::vector<double> composite_partition(const Generator& iso, ScaleRange r1, const Generator& par, ScaleRange r2) {
  iso.check(r1);
  par.check(r2);
  std::vector<double> se(iso.grid().size(), 0.0), sh(par.grid().size(), 0.0);
  for (int j = r1.lo; j <= r1.hi; ++j) {
    const auto& m = iso.multiplier(j);
    for (std::size_t i = 0; i < se.size(); ++i) se[i] += m[i] * m[i];
  }
  for (int k = r2.lo; k <= r2.hi; ++k) {
    const auto& m = par.multiplier(k);
    for (std::size_t i = 0; i < sh.size(); ++i) sh[i] += m[i] * m[i];
  }
  for (std::size_t i = 0; i < se.size(); ++i) se[i] *= sh[i];
  return se;
}

Field square_function(const Field& f, const Generator& g, ScaleRange r) {
  g.check(r);
  if (!(f.grid() == g.grid())) throw InvalidArgument("field and generator grids differ");
  const Spectrum fh = forward(f);
  Field acc(f.grid());
  for (int j = r.lo; j <= r.hi; ++j) {
    Spectrum s = fh;
    s *= g.multiplier(j);
    const Field part = inverse(s);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i] * part[i];
  }
  for (double& v : acc.values()) v = std::sqrt(v);
  return acc;
}

namespace {

void check_pair(const Field& f, const Generator& iso, ScaleRange r1, const Generator& par, ScaleRange r2) {
  iso.check(r1);
  par.check(r2);
  if (iso.metric().kind() != MetricKind::Isotropic || par.metric().kind() != MetricKind::Parabolic)
    throw InvalidArgument("composite square functions need an isotropic and a parabolic generator");
  if (!(f.grid() == iso.grid()) || !(f.grid() == par.grid())) throw InvalidArgument("field and generator grids differ");
}

Field band_piece(const Spectrum& fh, const std::vector<double>& a, const std::vector<double>& b) {
  Spectrum s = fh;
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= a[i] * b[i];
  return inverse(s);
}

bool disjoint(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0.0 && b[i] != 0.0) return false;
  return true;
}

}  // namespace

Field square_function_com(const Field& f, const Generator& iso, ScaleRange r1, const Generator& par, ScaleRange r2) {
  check_pair(f, iso, r1, par, r2);
  const Spectrum fh = forward(f);
  Field acc(f.grid());
  for (int j = r1.lo; j <= r1.hi; ++j) {
    for (int k = r2.lo; k <= r2.hi; ++k) {
      const auto& a = iso.multiplier(j);
      const auto& b = par.multiplier(k);
      if (disjoint(a, b)) continue;
      const Field part = band_piece(fh, a, b);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i] * part[i];
    }
  }
  for (double& v : acc.values()) v = std::sqrt(v);
  return acc;
}

std::pair<int, int> lattice_steps(const Grid& grid, int j, int k, const LatticeOptions& opt) {
  const bool use_max = opt.convention == LatticeConvention::Max;
  const int ea = use_max ? std::max(j, k) : std::min(j, k);
  const int eb = use_max ? std::max(j, 2 * k) : std::min(j, 2 * k);
  const double h = grid.spacing();
  auto steps = [&](int e) {
    const double spacing = std::ldexp(1.0, opt.shift - e);
    const double cells = spacing / h;
    if (cells <= 1.0) return 1;
    const int s = static_cast<int>(std::lround(std::exp2(std::floor(std::log2(cells) + 1e-9))));
    return std::min(s, grid.samples());
  };
  return {steps(ea), steps(eb)};
}

Field discrete_square_function_com(const Field& f, const Generator& iso, ScaleRange r1, const Generator& par,
                                   ScaleRange r2, const LatticeOptions& opt) {
  check_pair(f, iso, r1, par, r2);
  const Grid& grid = f.grid();
  const int N = grid.samples();
  const int n = grid.dim();
  const Spectrum fh = forward(f);
  Field acc(grid);
  for (int j = r1.lo; j <= r1.hi; ++j) {
    for (int k = r2.lo; k <= r2.hi; ++k) {
      const auto& a = iso.multiplier(j);
      const auto& b = par.multiplier(k);
      if (disjoint(a, b)) continue;
      const Field part = band_piece(fh, a, b);
      const auto [sa, sb] = lattice_steps(grid, j, k, opt);
      auto corner = [N](int i, int step) {
        const int rel = i - N / 2;
        const int c = static_cast<int>(std::floor(static_cast<double>(rel) / step)) * step;
        return ((c + N / 2) % N + N) % N;
      };
      for (std::size_t i = 0; i < acc.size(); ++i) {
        auto idx = grid.unflatten(i);
        for (int d = 0; d < n; ++d) {
          auto& c = idx[static_cast<std::size_t>(d)];
          c = corner(c, d == n - 1 ? sb : sa);
        }
        const double v = part[grid.flatten(idx)];
        acc[i] += v * v;
      }
    }
  }
  for (double& v : acc.values()) v = std::sqrt(v);
  return acc;
}

namespace {

// (h^n sum |g|^p)^(1/p); a quasi-norm for p < 1.
double quasi_norm(const Field& g, double p) {
  if (p >= 1.0) return lp_norm(g, p);
  const double scale = g.max_abs();
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : g.values()) s += std::pow(std::abs(x) / scale, p);
  return scale * std::pow(s * g.grid().cell_volume(), 1.0 / p);
}

}  // namespace

double hardy_norm(const Field& f, HardyVariant variant, double p, const HardyContext& ctx) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("hardy_norm needs 0 < p <= 1");
  Field g = f;
  const double mu = g.mean();
  for (double& v : g.values()) v -= mu;
  switch (variant) {
    case HardyVariant::Isotropic:
      if (!ctx.iso) throw InvalidArgument("hardy_norm: isotropic generator missing");
      return quasi_norm(square_function(g, *ctx.iso, ctx.r1), p);
    case HardyVariant::Parabolic:
      if (!ctx.par) throw InvalidArgument("hardy_norm: parabolic generator missing");
      return quasi_norm(square_function(g, *ctx.par, ctx.r2), p);
    case HardyVariant::Composite:
      if (!ctx.iso || !ctx.par) throw InvalidArgument("hardy_norm: composite needs both generators");
      return quasi_norm(discrete_square_function_com(g, *ctx.iso, ctx.r1, *ctx.par, ctx.r2), p);
  }
  throw InvalidArgument("hardy_norm: unknown variant");
}

}  // namespace mixhom
