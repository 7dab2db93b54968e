#include "mixhom/calderon.hpp"

#include <algorithm>
#include <cmath>

#include "mixhom/fit.hpp"
#include "mixhom/transform.hpp"

namespace mixhom {

std::vector<double> psi_jk_multiplier(const Generator& iso, const Generator& par, int j, int k) {
  if (!(iso.grid() == par.grid())) throw InvalidArgument("generators live on different grids");
  const auto& a = iso.multiplier(j);
  const auto& b = par.multiplier(k);
  std::vector<double> m(a.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = a[i] * b[i];
  return m;
}

Field psi_jk(const Generator& iso, const Generator& par, int j, int k) {
  const auto m = psi_jk_multiplier(iso, par, j, k);
  Spectrum s(iso.grid());
  for (std::size_t i = 0; i < m.size(); ++i) s[i] = m[i];
  return inverse(s);
}

Reconstruction calderon_reconstruct(const Field& f, const Generator& iso, ScaleRange r1, const Generator& par,
                                    ScaleRange r2, const LatticeOptions& opt) {
  iso.check(r1);
  par.check(r2);
  const Grid& grid = f.grid();
  if (!(grid == iso.grid()) || !(grid == par.grid())) throw InvalidArgument("field and generator grids differ");
  const int N = grid.samples();
  const int n = grid.dim();
  const double h = grid.spacing();
  const double hn = grid.cell_volume();
  const Spectrum fh = forward(f);

  Spectrum acc(grid);
  double frame_energy = 0.0;
  int active = 0;
  for (int j = r1.lo; j <= r1.hi; ++j) {
    for (int k = r2.lo; k <= r2.hi; ++k) {
      const auto m = psi_jk_multiplier(iso, par, j, k);
      if (std::all_of(m.begin(), m.end(), [](double v) { return v == 0.0; })) continue;
      ++active;
      Spectrum s = fh;
      s *= m;
      const Field part = inverse(s);
      const auto [sa, sb] = lattice_steps(grid, j, k, opt);
      const double area = std::pow(sa * h, n - 1) * (sb * h);
      Field samples(grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto idx = grid.unflatten(i);
        bool on_lattice = true;
        for (int d = 0; d < n && on_lattice; ++d) {
          const int step = d == n - 1 ? sb : sa;
          const int rel = ((idx[static_cast<std::size_t>(d)] - N / 2) % step + step) % step;
          on_lattice = rel == 0;
        }
        if (!on_lattice) continue;
        samples[i] = part[i] * area / hn;
        frame_energy += area * part[i] * part[i];
      }
      Spectrum g = forward(samples);
      g *= m;
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += g[i];
    }
  }
  Reconstruction out{inverse(acc), {}};
  const double fn = lp_norm(f, 2.0);
  const double err = lp_norm(f - out.field, 2.0);
  out.report.residual = fn > 0.0 ? err / fn : err;
  out.report.frame_energy_ratio = fn > 0.0 ? frame_energy / (fn * fn) : 0.0;
  out.report.active_pairs = active;
  return out;
}

ProbeResult almost_orthogonality_probe(const LinearOperator& op, const Generator& g, int j, int jp) {
  const Field tpsi = op(g.spatial(jp));
  if (!(tpsi.grid() == g.grid())) throw InvalidArgument("operator changed the grid");
  ProbeResult r{apply_multiplier(tpsi, g.multiplier(j)), 0.0};
  r.sup = r.field.max_abs();
  return r;
}

OrthogonalityFit fit_almost_orthogonality(const LinearOperator& op, const Generator& g, int j0, int max_offset,
                                          double floor_rel) {
  const ScaleRange res = g.resolvable();
  if (!res.contains(j0)) throw InvalidArgument("base scale is not resolvable");
  OrthogonalityFit fit;
  const int Q = g.metric().homogeneous_dimension();
  double smax = 0.0;
  for (int d = -max_offset; d <= max_offset; ++d) {
    const int jp = j0 - d;
    if (!res.contains(jp)) continue;
    const ProbeResult p = almost_orthogonality_probe(op, g, j0, jp);
    fit.points.push_back({d, p.sup, 0.0});
    smax = std::max(smax, p.sup);
  }
  if (fit.points.size() < 3) throw InvalidArgument("fewer than three resolvable offsets");
  if (smax == 0.0) throw InvalidArgument("operator annihilates every probe");
  const double floor = floor_rel * smax;
  std::vector<double> xs, ys;
  for (auto& p : fit.points) {
    const int jp = j0 - p.offset;
    if (p.sup < floor) ++fit.vanishing;
    p.normalized_log2 = std::log2(std::max(p.sup, floor)) - std::min(j0, jp) * Q;
    xs.push_back(std::abs(p.offset));
    ys.push_back(p.normalized_log2);
  }
  const LineFit lf = fit_line(xs, ys);
  fit.epsilon = -lf.slope;
  fit.log2_constant = lf.intercept;
  fit.r2 = lf.r2;
  return fit;
}

}  // namespace mixhom
