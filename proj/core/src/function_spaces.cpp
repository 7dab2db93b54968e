#include "mixhom/function_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "mixhom/fit.hpp"
#include "mixhom/transform.hpp"

namespace mixhom {

namespace {

Point offset_vector(const Grid& grid, const Offset& o) {
  Point u(grid.dim());
  for (int d = 0; d < grid.dim(); ++d) u[d] = o[static_cast<std::size_t>(d)] * grid.spacing();
  return u;
}

// f(x + u) with u an integer cell offset on the torus.
Field shifted(const Field& f, const Offset& o) {
  const Grid& grid = f.grid();
  Field out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto idx = grid.unflatten(i);
    for (int d = 0; d < grid.dim(); ++d) idx[static_cast<std::size_t>(d)] += o[static_cast<std::size_t>(d)];
    out[i] = f[grid.flatten(idx)];
  }
  return out;
}

}  // namespace

TestNormResult test_norm(const Field& f, const TestNormParams& p) {
  const Grid& grid = f.grid();
  if (!(p.r > 0.0) || !(p.beta > 0.0 && p.beta <= 1.0) || !(p.gamma > 0.0))
    throw InvalidArgument("test_norm needs r > 0, 0 < beta <= 1, gamma > 0");
  const double fmax = f.max_abs();
  if (std::abs(f.mean()) > 1e-8 * std::max(fmax, 1e-300))
    throw InvalidArgument("test_norm requires a mean-zero field");
  const Metric m(p.metric, grid.dim());
  const Point x0 = p.x0.dim() == 0 ? Point(grid.dim()) : p.x0;
  const int Q = m.homogeneous_dimension();

  std::vector<double> dist(grid.size()), bound(grid.size());
  TestNormResult res;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = m.norm(torus_difference(grid, grid.coordinate(i), x0));
    dist[i] = d;
    bound[i] = std::pow(p.r, p.gamma) / std::pow(p.r + d, Q + p.gamma);
    res.decay = std::max(res.decay, std::abs(f[i]) / bound[i]);
  }
  // Hölder part over axis and diagonal offsets of 1, 2, 4, ... cells.
  std::vector<Offset> offs;
  for (int len = 1; len <= grid.samples() / 4; len *= 2) {
    for (int d = 0; d < grid.dim(); ++d) {
      Offset o{};
      o[static_cast<std::size_t>(d)] = len;
      offs.push_back(o);
    }
    Offset diag{};
    for (int d = 0; d < grid.dim(); ++d) diag[static_cast<std::size_t>(d)] = len;
    offs.push_back(diag);
  }
  for (const auto& o : offs) {
    const Field g = shifted(f, o);
    const double u = m.norm(offset_vector(grid, o));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double scale = p.r + dist[i];
      if (u > 0.5 * scale) continue;
      const double b = std::pow(u / scale, p.beta) * bound[i];
      res.holder = std::max(res.holder, std::abs(g[i] - f[i]) / b);
    }
  }
  res.norm = std::max(res.decay, res.holder);
  return res;
}

DecayFit decay_exponent_fit(const Field& f, const Point& x0, MetricKind metric, double r_min, double r_max) {
  const Grid& grid = f.grid();
  const Metric m(metric, grid.dim());
  const double top = r_max > 0.0 ? r_max : 0.5 * grid.half_extent();
  if (!(r_min > 0.0 && top > r_min)) throw InvalidArgument("decay fit needs 0 < r_min < r_max");
  DecayFit fit;
  for (double R = r_min; R < top * (1.0 - 1e-12); R *= 2.0) fit.shells.push_back({R, 0.0, 0.0});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = m.norm(torus_difference(grid, grid.coordinate(i), x0));
    if (d < r_min) continue;
    const auto s = static_cast<std::size_t>(std::floor(std::log2(d / r_min)));
    if (s >= fit.shells.size()) continue;
    const double v = std::abs(f[i]);
    if (v > fit.shells[s].max_abs) fit.shells[s] = {fit.shells[s].inner, v, d};
  }
  std::vector<double> xs, ys;
  for (const auto& s : fit.shells) {
    if (!(s.max_abs > 0.0)) continue;
    xs.push_back(std::log(1.0 + s.argmax_norm));
    ys.push_back(std::log(s.max_abs));
  }
  if (xs.size() < 2) throw InvalidArgument("decay fit needs two non-empty shells");
  const LineFit lf = fit_line(xs, ys);
  fit.exponent = -lf.slope;
  fit.r2 = lf.r2;
  return fit;
}

std::vector<Offset> lipschitz_offsets(const Grid& grid, int random_count, std::uint64_t seed) {
  const int n = grid.dim();
  const int top = grid.samples() / 4;
  std::set<Offset> out;
  for (int len = 1; len <= top; ++len) {
    for (int d = 0; d < n; ++d) {
      Offset o{};
      o[static_cast<std::size_t>(d)] = len;
      out.insert(o);
    }
    Offset diag{};
    for (int d = 0; d < n; ++d) diag[static_cast<std::size_t>(d)] = len;
    out.insert(diag);
  }
  std::mt19937_64 eng(seed);
  for (int i = 0; i < random_count; ++i) {
    Offset o{};
    bool zero = true;
    for (int d = 0; d < n; ++d) {
      o[static_cast<std::size_t>(d)] = static_cast<int>(eng() % static_cast<std::uint64_t>(2 * top + 1)) - top;
      zero = zero && o[static_cast<std::size_t>(d)] == 0;
    }
    if (!zero) out.insert(o);
  }
  return {out.begin(), out.end()};
}

double lip_norm(const Field& f, double alpha, MetricKind metric, const std::vector<Offset>& offsets) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("lip_norm needs 0 < alpha < 1");
  const Metric m(metric, f.grid().dim());
  double best = 0.0;
  for (const auto& o : offsets) {
    const double u = m.norm(offset_vector(f.grid(), o));
    if (!(u > 0.0)) continue;
    best = std::max(best, (shifted(f, o) - f).max_abs() / std::pow(u, alpha));
  }
  return best;
}

double lip_norm_com(const Field& f, double alpha, int max_cells) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("lip_norm_com needs 0 < alpha < 1");
  const Grid& grid = f.grid();
  const int n = grid.dim();
  const int top = max_cells > 0 ? max_cells : grid.samples() / 4;
  std::vector<int> lens;
  for (int len = 1; len <= top; len *= 2) {
    lens.push_back(len);
    if (len > 1 && len + len / 2 <= top) lens.push_back(len + len / 2);
  }
  double best = 0.0;
  for (int a : lens) {
    Offset u{};
    u[0] = a;
    const Field du = shifted(f, u) - f;
    const double ue = a * grid.spacing();
    for (int b : lens) {
      Offset v{};
      v[static_cast<std::size_t>(n - 1)] = b;
      const Field duv = shifted(du, v) - du;
      const double vh = std::sqrt(b * grid.spacing());
      best = std::max(best, duv.max_abs() / (std::pow(ue, alpha) * std::pow(vh, alpha)));
    }
  }
  return best;
}

double lip_norm_lp(const Field& f, double alpha, const Generator& g, ScaleRange r, LipWeight w) {
  g.check(r);
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("lip_norm_lp needs 0 < alpha < 1");
  const Spectrum fh = forward(f);
  double best = 0.0;
  for (int j = r.lo; j <= r.hi; ++j) {
    Spectrum s = fh;
    s *= g.multiplier(j);
    const double weight = std::exp2((w == LipWeight::Decay ? 1.0 : -1.0) * j * alpha);
    best = std::max(best, weight * inverse(s).max_abs());
  }
  return best;
}

}  // namespace mixhom
