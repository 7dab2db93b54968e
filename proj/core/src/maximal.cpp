#include "mixhom/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "mixhom/transform.hpp"

namespace mixhom {

namespace {

struct Average {
  bool single_cell;
  std::vector<Complex> spectrum;
};

// Normalised indicator of {y : pred(y)}, as a multiplier.
template <class Pred>
Average indicator(const Grid& grid, Pred pred) {
  Field ind(grid);
  std::size_t count = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (pred(grid.coordinate(i))) {
      ind[i] = 1.0;
      ++count;
    }
  }
  if (count == 0) throw InvalidArgument("empty averaging set");
  if (count == 1) return {true, {}};
  ind *= 1.0 / (static_cast<double>(count) * grid.cell_volume());
  return {false, forward(ind).values()};
}

void take_max(Field& acc, const Field& v) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::max(acc[i], v[i]);
}

}  // namespace

std::vector<double> maximal_radii(const Grid& grid, double ratio, double r_max) {
  if (!(ratio > 1.0)) throw InvalidArgument("radius ratio must exceed 1");
  const double top = r_max > 0.0 ? r_max : grid.half_extent();
  std::vector<double> r;
  for (double v = grid.spacing(); v <= top * (1.0 + 1e-12); v *= ratio) r.push_back(v);
  return r;
}

Field hl_maximal(const Field& f, const Metric& m, std::span<const double> radii) {
  if (radii.empty()) throw InvalidArgument("hl_maximal needs at least one radius");
  if (m.dim() != f.grid().dim()) throw InvalidArgument("metric and field dimensions differ");
  const Field af = f.abs();
  const Spectrum fh = forward(af);
  Field out = af;
  for (double r : radii) {
    const Average a = indicator(f.grid(), [&](const Point& y) { return m.norm(y) < r; });
    if (a.single_cell) continue;
    Spectrum s = fh;
    s *= a.spectrum;
    take_max(out, inverse(s));
  }
  return out;
}

Field strong_maximal(const Field& f, std::span<const double> radii) {
  if (radii.empty()) throw InvalidArgument("strong_maximal needs at least one radius");
  const Grid& grid = f.grid();
  const Field af = f.abs();
  const Spectrum fh = forward(af);
  std::vector<Average> head, tail;
  for (double r : radii) {
    head.push_back(indicator(grid, [&](const Point& y) { return y.last() == 0.0 && std::sqrt(y.head_norm2()) < r; }));
    tail.push_back(indicator(grid, [&](const Point& y) { return y.head_norm2() == 0.0 && std::abs(y.last()) < r; }));
  }
  Field out = af;
  for (const auto& a : head) {
    for (const auto& b : tail) {
      if (a.single_cell && b.single_cell) continue;
      Spectrum s = fh;
      if (!a.single_cell) s *= a.spectrum;
      if (!b.single_cell) s *= b.spectrum;
      // A single-cell factor contributes (1 / h^n) delta, whose transform is one.
      take_max(out, inverse(s));
    }
  }
  return out;
}

Field maximal_truncation(const TruncatedOperator& op, const Field& f, std::span<const double> eps) {
  if (eps.empty()) throw InvalidArgument("maximal_truncation needs at least one radius");
  Field out(f.grid());
  for (double e : eps) take_max(out, op.apply(f, e).abs());
  return out;
}

CotlarResult cotlar_fit(const TruncatedOperator& op, const Field& f, const CotlarOptions& opt) {
  if (!(opt.delta > 0.0) || !(opt.p >= 1.0)) throw InvalidArgument("cotlar_fit needs delta > 0 and p >= 1");
  if (opt.eps.empty() || opt.radii.empty()) throw InvalidArgument("cotlar_fit needs radii and an eps ladder");
  const Metric m(opt.metric, f.grid().dim());
  const double eps_min = *std::min_element(opt.eps.begin(), opt.eps.end());
  const Field tf = op.apply(f, eps_min);
  const Field tstar = maximal_truncation(op, f, opt.eps);

  Field tpow = tf.abs();
  for (double& v : tpow.values()) v = std::pow(v, opt.delta);
  Field a = hl_maximal(tpow, m, opt.radii);
  for (double& v : a.values()) v = std::pow(v, 1.0 / opt.delta);

  const Field ms = strong_maximal(f, opt.radii);
  Field mpow = ms;
  for (double& v : mpow.values()) v = std::pow(v, opt.p);
  Field b = hl_maximal(mpow, m, opt.radii);
  for (double& v : b.values()) v = std::pow(v, 1.0 / opt.p);

  CotlarResult res{0.0, 0, Field(f.grid())};
  const double floor = 1e-12 * f.max_abs();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double rhs = a[i] + b[i] + ms[i];
    if (!(rhs > floor)) continue;
    res.ratio[i] = tstar[i] / rhs;
    res.constant = std::max(res.constant, res.ratio[i]);
    ++res.cells;
  }
  return res;
}

std::vector<WeakTypeRow> weak_type_probe(const TruncatedOperator& op, const Field& f, std::span<const double> alphas,
                                         double eps) {
  const double l1 = lp_norm(f, 1.0);
  if (!(l1 > 0.0)) throw InvalidArgument("weak_type_probe needs f with nonzero L1 norm");
  const Field tf = op.apply(f, eps);
  std::vector<WeakTypeRow> rows;
  for (double a : alphas) {
    WeakTypeRow r;
    r.alpha = a;
    r.measure = weak_distribution(tf, a);
    r.statistic = a * r.measure / l1;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace mixhom
