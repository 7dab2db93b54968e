#include "mixhom/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "mixhom/calderon.hpp"
#include "mixhom/fields.hpp"
#include "mixhom/fit.hpp"
#include "mixhom/function_spaces.hpp"
#include "mixhom/kernel.hpp"
#include "mixhom/maximal.hpp"
#include "mixhom/truncation.hpp"

namespace mixhom::harness {

namespace {

using Keys = std::set<std::string>;

const Keys kKernelKeys = {"k", "l", "profile_e", "profile_h", "cancel", "truncation_metric", "resolution"};
const Keys kRangeKeys = {"j_min", "j_max", "k_min", "k_max"};

Keys merge(std::initializer_list<Keys> parts) {
  Keys out;
  for (const auto& p : parts) out.insert(p.begin(), p.end());
  return out;
}

template <class F>
auto as_config_error(const std::string& field, F&& fn) {
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    throw ConfigError("field '" + field + "': " + e.what());
  }
}

// ---------------------------------------------------------------- parsing

Grid parse_grid(const Config& c, int def_n, int def_N, double def_L) {
  const int n = c.get_int("n", def_n);
  const int N = c.get_int("N", def_N);
  const double L = c.get_double("L", def_L);
  if (n != 2 && n != 3) throw ConfigError("field 'n': dimension must be 2 or 3");
  if (!(L > 0.0)) throw ConfigError("field 'L': half-extent must be positive");
  return as_config_error("N", [&] { return Grid(n, N, L); });
}

Grid with_samples(const Grid& g, int N, const std::string& field) {
  return as_config_error(field, [&] { return Grid(g.dim(), N, g.half_extent()); });
}

std::uint64_t parse_seed(const Config& c) {
  const int s = c.get_int("seed", 1);
  if (s < 0) throw ConfigError("field 'seed': must be non-negative");
  return static_cast<std::uint64_t>(s);
}

ScaleRange parse_range(const Config& c, const std::string& lo, const std::string& hi, ScaleRange def) {
  ScaleRange r{c.get_int(lo, def.lo), c.get_int(hi, def.hi)};
  if (r.lo > r.hi) throw ConfigError("field '" + lo + "' must not exceed '" + hi + "'");
  return r;
}

void check_range(const Generator& g, ScaleRange r, const std::string& field) {
  as_config_error(field, [&] {
    g.check(r);
    return 0;
  });
}

int parse_positive(const Config& c, const std::string& key, int def) {
  const int v = c.get_int(key, def);
  if (v < 1) throw ConfigError("field '" + key + "': must be at least 1");
  return v;
}

double parse_open_unit(const Config& c, const std::string& key, double def) {
  const double v = c.get_double(key, def);
  if (!(v > 0.0 && v < 1.0)) throw ConfigError("field '" + key + "': must lie in (0, 1)");
  return v;
}

struct KernelSetup {
  ProductKernel K;
  TruncationOptions opt;
};

KernelSetup parse_kernel(const Config& c, const Grid& grid) {
  const int n = grid.dim();
  const double k = c.get_double("k", 0.25);
  const double l = c.get_double("l", n + 1 - k);
  const Regime regime = classify(k, l, n);
  if (regime != Regime::CaseH && regime != Regime::CaseE)
    throw ConfigError("field 'k': (k, l) = (" + format_number(k) + ", " + format_number(l) + ") is in regime " +
                      std::string(to_string(regime)) + "; need k + l = n + 1 with l > 2 or k + l/2 = n with l < 2");
  const auto sphere_e = MetricKind::Isotropic;
  const auto sphere_h = MetricKind::Parabolic;
  Profile pe = as_config_error("profile_e", [&] { return make_profile(c.get_string("profile_e", "tilted"), sphere_e, n); });
  Profile ph = as_config_error("profile_h", [&] { return make_profile(c.get_string("profile_h", "odd"), sphere_h, n); });
  ProductKernel K(n, k, l, std::move(pe), std::move(ph));
  if (c.get_bool("cancel", false)) K = enforce_cancellation(K);
  TruncationOptions opt;
  const std::string def_metric = regime == Regime::CaseH ? "parabolic" : "isotropic";
  opt.metric = as_config_error("truncation_metric",
                               [&] { return parse_metric_kind(c.get_string("truncation_metric", def_metric)); });
  opt.resolution = c.get_double("resolution", 1.0);
  if (!(opt.resolution >= 0.25 && opt.resolution <= 8.0))
    throw ConfigError("field 'resolution': must lie in [0.25, 8]");
  if (grid.half_extent() < 4.0)
    throw ConfigError("field 'L': kernel experiments need L >= 4 to hold the kernel support");
  return {std::move(K), opt};
}

std::vector<double> parse_eps(const Config& c, const std::string& key, const std::vector<double>& def,
                              const TruncationOptions& opt, std::size_t min_count = 1) {
  auto eps = c.get_list(key, def);
  if (eps.size() < min_count)
    throw ConfigError("field '" + key + "': need at least " + std::to_string(min_count) + " values");
  for (double e : eps)
    if (!(e >= opt.min_epsilon && e <= opt.near_radius))
      throw ConfigError("field '" + key + "': " + format_number(e) + " outside [" + format_number(opt.min_epsilon) +
                        ", " + format_number(opt.near_radius) + "]");
  for (std::size_t i = 1; i < eps.size(); ++i)
    if (!(eps[i] < eps[i - 1])) throw ConfigError("field '" + key + "': values must be strictly decreasing");
  return eps;
}

double parse_single_eps(const Config& c, const TruncationOptions& opt) {
  return parse_eps(c, "epsilon", {0x1p-6}, opt).front();
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double rel_change(double a, double ref) { return std::abs(a - ref) / std::abs(ref); }

// ---------------------------------------------------------------- calderon-condition

Report run_calderon_condition(const Config& c, bool dry) {
  const Grid grid = parse_grid(c, 2, 256, 8.0);
  const ScaleRange r1 = parse_range(c, "j_min", "j_max", {-2, 4});
  const ScaleRange r2 = parse_range(c, "k_min", "k_max", {-2, 4});
  const int count = parse_positive(c, "fields", 5);
  const std::uint64_t seed = parse_seed(c);
  const Generator iso(Metric(MetricKind::Isotropic, grid.dim()), grid);
  const Generator par(Metric(MetricKind::Parabolic, grid.dim()), grid);
  check_range(iso, r1, "j_min");
  check_range(par, r2, "k_min");
  Report rep;
  if (dry) return rep;

  const double dev_iso = partition_deviation(iso, r1);
  const double dev_par = partition_deviation(par, r2);
  rep.add("partition_deviation_iso", dev_iso);
  rep.add("partition_deviation_par", dev_par);
  rep.add("partition_max_deviation", std::max(dev_iso, dev_par));

  // Mass the truncated scale sums leave out on the in-band set.
  double residual = 0.0;
  for (const auto* g : {&iso, &par}) {
    const ScaleRange r = g == &iso ? r1 : r2;
    const ScaleRange all = g->resolvable();
    const auto& t = g->frequency_norms();
    std::vector<double> out(t.size(), 0.0);
    for (int j = all.lo; j <= all.hi; ++j) {
      if (r.contains(j)) continue;
      const auto& m = g->multiplier(j);
      for (std::size_t i = 0; i < t.size(); ++i) out[i] += m[i] * m[i];
    }
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] >= std::ldexp(1.0, r.lo) && t[i] <= std::ldexp(1.0, r.hi)) residual = std::max(residual, out[i]);
  }
  rep.add("partition_truncation_residual", residual);

  Table pt{"plancherel", {"field", "iso", "par", "com"}, {}};
  std::vector<double> e_iso, e_par, e_com;
  for (int i = 0; i < count; ++i) {
    const Field f = random_in_band(iso, r1, par, r2, seed + static_cast<std::uint64_t>(i));
    const double nf = lp_norm(f, 2.0);
    e_iso.push_back(std::abs(lp_norm(square_function(f, iso, r1), 2.0) - nf) / nf);
    e_par.push_back(std::abs(lp_norm(square_function(f, par, r2), 2.0) - nf) / nf);
    e_com.push_back(std::abs(lp_norm(square_function_com(f, iso, r1, par, r2), 2.0) - nf) / nf);
    pt.rows.push_back({static_cast<double>(i), e_iso.back(), e_par.back(), e_com.back()});
  }
  rep.add("plancherel_iso_max", max_of(e_iso));
  rep.add("plancherel_par_max", max_of(e_par));
  rep.add("plancherel_com_max", max_of(e_com));
  rep.add("plancherel_max", std::max({max_of(e_iso), max_of(e_par), max_of(e_com)}));

  Table dt{"discrete_ratio", {"field", "ratio"}, {}};
  std::vector<double> ratios;
  const auto suite = smoke_suite(grid, seed);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Field& f = suite[i].field;
    const double d = lp_norm(discrete_square_function_com(f, iso, r1, par, r2), 2.0);
    const double g = lp_norm(square_function_com(f, iso, r1, par, r2), 2.0);
    ratios.push_back(d / g);
    dt.rows.push_back({static_cast<double>(i), d / g});
  }
  rep.add("discrete_ratio_min", min_of(ratios));
  rep.add("discrete_ratio_max", max_of(ratios));
  rep.tables = {pt, dt};
  return rep;
}

// ---------------------------------------------------------------- reconstruct

Report run_reconstruct(const Config& c, bool dry) {
  const Grid grid = parse_grid(c, 2, 256, 8.0);
  const ScaleRange r1 = parse_range(c, "j_min", "j_max", {-2, 4});
  const ScaleRange r2 = parse_range(c, "k_min", "k_max", {-2, 4});
  const int count = parse_positive(c, "fields", 5);
  const std::uint64_t seed = parse_seed(c);
  const Generator iso(Metric(MetricKind::Isotropic, grid.dim()), grid);
  const Generator par(Metric(MetricKind::Parabolic, grid.dim()), grid);
  check_range(iso, r1, "j_min");
  check_range(par, r2, "k_min");
  Report rep;
  if (dry) return rep;

  LatticeOptions coarse, fine, minc;
  coarse.shift = 1;
  fine.shift = -1;
  minc.convention = LatticeConvention::Min;
  Table t{"reconstruct", {"field", "residual", "residual_coarse", "residual_fine", "residual_min_convention",
                          "frame_energy_ratio"}, {}};
  std::vector<double> res, res_c, res_f, res_m;
  bool monotone = true;
  int pairs = 0;
  for (int i = 0; i < count; ++i) {
    const Field f = random_in_band(iso, r1, par, r2, seed + static_cast<std::uint64_t>(i));
    const auto base = calderon_reconstruct(f, iso, r1, par, r2);
    res.push_back(base.report.residual);
    res_c.push_back(calderon_reconstruct(f, iso, r1, par, r2, coarse).report.residual);
    res_f.push_back(calderon_reconstruct(f, iso, r1, par, r2, fine).report.residual);
    res_m.push_back(calderon_reconstruct(f, iso, r1, par, r2, minc).report.residual);
    // Below round-off the fine and default lattices are both exact; compare with a floor.
    monotone = monotone && res_c.back() > res.back() && res_f.back() <= res.back() + 1e-12;
    pairs = base.report.active_pairs;
    t.rows.push_back({static_cast<double>(i), res.back(), res_c.back(), res_f.back(), res_m.back(),
                      base.report.frame_energy_ratio});
  }
  rep.add("residual_max", max_of(res));
  rep.add("residual_coarse_min", min_of(res_c));
  rep.add("residual_fine_max", max_of(res_f));
  rep.add("residual_min_convention_max", max_of(res_m));
  rep.add("refinement_monotone", monotone ? 1.0 : 0.0);
  rep.add("active_pairs", pairs);

  std::vector<double> frame;
  for (const auto& nf : smoke_suite(grid, seed)) {
    const Field f = in_band_projection(nf.field, iso, r1, par, r2);
    frame.push_back(calderon_reconstruct(f, iso, r1, par, r2).report.frame_energy_ratio);
  }
  rep.add("frame_energy_min", min_of(frame));
  rep.add("frame_energy_max", max_of(frame));
  rep.tables = {t};
  return rep;
}

// ---------------------------------------------------------------- truncation-sweep

Report run_truncation_sweep(const Config& c, bool dry) {
  const Grid grid = parse_grid(c, 2, 256, 8.0);
  const auto ks = parse_kernel(c, grid);
  const auto eps = parse_eps(c, "eps", dyadic_ladder(2, 6), ks.opt, 4);
  const std::uint64_t seed = parse_seed(c);
  const bool control = c.get_bool("control", true);
  const auto suite = smoke_suite(grid, seed);
  const std::string primary = c.get_string("field", suite.front().name);
  std::size_t primary_idx = suite.size();
  for (std::size_t i = 0; i < suite.size(); ++i)
    if (suite[i].name == primary) primary_idx = i;
  if (primary_idx == suite.size()) throw ConfigError("field 'field': unknown suite field '" + primary + "'");
  Report rep;
  if (dry) return rep;

  for (const auto measure : {SphereMeasure::Invariant, SphereMeasure::Euclidean}) {
    CancellationOptions co;
    co.measure = measure;
    const auto cr = spherical_mean(ks.K, co);
    rep.add(std::string("spherical_mean_") + std::string(to_string(measure)), cr.mean);
    if (measure == SphereMeasure::Invariant) rep.add("spherical_mean_error", cr.error_estimate);
  }

  auto sweep_suite = [&](const TruncatedOperator& op, const std::string& table_name) {
    Table tab{table_name, {"epsilon"}, {}};
    for (const auto& nf : suite) tab.columns.push_back(nf.name);
    for (double e : eps) tab.rows.push_back({e});
    std::vector<std::vector<SweepRow>> all;
    for (const auto& nf : suite) {
      all.push_back(truncation_sweep(op, nf.field, eps));
      for (std::size_t i = 0; i < eps.size(); ++i) tab.rows[i].push_back(all.back()[i].l2_ratio);
    }
    return std::make_pair(tab, all);
  };
  auto log_fit = [&](const std::vector<SweepRow>& rows) {
    std::vector<double> x, y;
    for (const auto& r : rows) {
      x.push_back(std::log(1.0 / r.epsilon));
      y.push_back(r.l2_ratio);
    }
    return fit_line(x, y);
  };

  const TruncatedOperator op(ks.K, grid, ks.opt);
  auto [suite_table, sweeps] = sweep_suite(op, "suite_l2");
  std::vector<double> spread, slope, cr_pen, cr_last;
  const std::size_t m = eps.size();
  for (const auto& rows : sweeps) {
    double lo = rows.front().l2_ratio, hi = lo;
    for (const auto& r : rows) lo = std::min(lo, r.l2_ratio), hi = std::max(hi, r.l2_ratio);
    spread.push_back(hi / lo);
    slope.push_back(log_fit(rows).slope);
    cr_pen.push_back(rows[m - 2].cauchy / rows[m - 3].cauchy);
    cr_last.push_back(rows[m - 1].cauchy / rows[m - 2].cauchy);
  }
  rep.add("l2_ratio_spread", max_of(spread));
  rep.add("l2_ratio_max", [&] {
    double v = 0.0;
    for (const auto& rows : sweeps)
      for (const auto& r : rows) v = std::max(v, r.l2_ratio);
    return v;
  }());
  rep.add("log_slope_max", max_of(slope));
  rep.add("cauchy_ratio_penultimate", max_of(cr_pen));
  rep.add("cauchy_ratio_last", max_of(cr_last));
  rep.add("cauchy_ratio_max", std::max(max_of(cr_pen), max_of(cr_last)));

  Table sweep{"sweep", {"epsilon", "l2_ratio", "cauchy_diff"}, {}};
  for (const auto& r : sweeps[primary_idx]) sweep.rows.push_back({r.epsilon, r.l2_ratio, r.cauchy});
  rep.tables = {sweep, suite_table};
  rep.plots.push_back({"sweep", "sweep", "epsilon", {"l2_ratio", "cauchy_diff"}, true, true});

  if (control) {
    const ProductKernel Kc(grid.dim(), ks.K.k(), ks.K.l(), make_profile("one", MetricKind::Isotropic, grid.dim()),
                           make_profile("one", MetricKind::Parabolic, grid.dim()));
    const TruncatedOperator opc(Kc, grid, ks.opt);
    auto [control_table, csweeps] = sweep_suite(opc, "control_l2");
    control_table.name = "control_l2";
    std::vector<double> cslope, cr2;
    for (const auto& rows : csweeps) {
      const auto fit = log_fit(rows);
      cslope.push_back(fit.slope);
      cr2.push_back(fit.r2);
    }
    rep.add("control_log_slope_min", min_of(cslope));
    rep.add("control_r2_min", min_of(cr2));
    rep.tables.push_back(control_table);
    std::vector<std::string> cols(control_table.columns.begin() + 1, control_table.columns.end());
    rep.plots.push_back({"control", "control_l2", "epsilon", cols, true, false});
  }
  return rep;
}

// ---------------------------------------------------------------- cotlar

Report run_cotlar(const Config& c, bool dry) {
  const Grid grid = parse_grid(c, 2, 256, 8.0);
  const auto ks = parse_kernel(c, grid);
  const auto eps = parse_eps(c, "eps", dyadic_ladder(1, 6), ks.opt, 2);
  const Grid grid_c = with_samples(grid, c.get_int("compare_N", 128), "compare_N");
  const double delta = c.get_double("delta", 2.0);
  const double p = c.get_double("p", 2.0);
  if (!(delta > 0.0)) throw ConfigError("field 'delta': must be positive");
  if (!(p > 0.0)) throw ConfigError("field 'p': must be positive");
  const double ratio = c.get_double("radii_ratio", 2.0);
  if (!(ratio > 1.0)) throw ConfigError("field 'radii_ratio': must exceed 1");
  const MetricKind mk =
      as_config_error("maximal_metric", [&] { return parse_metric_kind(c.get_string("maximal_metric", "parabolic")); });
  const std::uint64_t seed = parse_seed(c);
  Report rep;
  if (dry) return rep;

  auto fit_all = [&](const Grid& g) {
    const TruncatedOperator op(ks.K, g, ks.opt);
    CotlarOptions co;
    co.delta = delta;
    co.p = p;
    co.metric = mk;
    co.radii = maximal_radii(g, ratio);
    co.eps = eps;
    std::vector<double> out;
    std::size_t cells = 0;
    for (const auto& nf : smoke_suite(g, seed)) {
      const auto r = cotlar_fit(op, nf.field, co);
      out.push_back(r.constant);
      cells += r.cells;
    }
    return std::make_pair(out, cells);
  };
  const auto [cn, cells] = fit_all(grid);
  const auto [cc, cells_c] = fit_all(grid_c);
  Table t{"cotlar", {"field", "constant", "constant_compare"}, {}};
  std::vector<double> per_field;
  for (std::size_t i = 0; i < cn.size(); ++i) {
    t.rows.push_back({static_cast<double>(i), cn[i], cc[i]});
    per_field.push_back(rel_change(cn[i], cc[i]));
  }
  rep.add("cotlar_constant", max_of(cn));
  rep.add("cotlar_constant_compare", max_of(cc));
  rep.add("cotlar_relative_change", rel_change(max_of(cn), max_of(cc)));
  rep.add("cotlar_field_change_max", max_of(per_field));
  rep.add("cotlar_cells", static_cast<double>(cells));
  rep.add("cotlar_cells_compare", static_cast<double>(cells_c));
  rep.tables = {t};
  return rep;
}

// ---------------------------------------------------------------- hormander

Report run_hormander(const Config& c, bool dry) {
  const int n = c.get_int("n", 2);
  if (n != 2 && n != 3) throw ConfigError("field 'n': dimension must be 2 or 3");
  // The kernel lives on R^n; the grid keys only size the default truncation checks.
  const Grid grid = parse_grid(c, n, 256, 8.0);
  const auto ks = parse_kernel(c, grid);
  const int count = parse_positive(c, "pairs", 60);
  const auto scales = c.get_list("scales", {0.0625, 0.125, 0.25, 0.5});
  for (double s : scales)
    if (!(s > 0.0 && s <= 1.0)) throw ConfigError("field 'scales': values must lie in (0, 1]");
  const int refine = parse_positive(c, "refine", 2);
  if (refine < 2) throw ConfigError("field 'refine': must be at least 2");
  const MetricKind mk = ks.K.regime() == Regime::CaseH ? MetricKind::Parabolic : MetricKind::Isotropic;
  const std::uint64_t seed = parse_seed(c);
  Report rep;
  if (dry) return rep;

  const auto pairs = sample_hormander_pairs(n, mk, count, scales, seed);
  HormanderOptions base;
  base.metric = mk;
  HormanderOptions fine = base;
  fine.refine = refine;
  const auto a = hormander_constant(ks.K, pairs, base);
  const auto b = hormander_constant(ks.K, pairs, fine);
  Table t{"hormander", {"pair", "scale", "value", "value_refined"}, {}};
  double mean = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Metric m(mk, n);
    t.rows.push_back({static_cast<double>(i), m.norm(pairs[i].x2 - pairs[i].x1), a.values[i], b.values[i]});
    mean += a.values[i] / static_cast<double>(pairs.size());
  }
  rep.add("hormander_constant", a.constant);
  rep.add("hormander_constant_refined", b.constant);
  rep.add("hormander_relative_change", rel_change(a.constant, b.constant));
  rep.add("hormander_mean", mean);
  rep.tables = {t};
  return rep;
}

// ---------------------------------------------------------------- weak-type

Report run_weak_type(const Config& c, bool dry) {
  const Grid grid = parse_grid(c, 2, 256, 8.0);
  const auto ks = parse_kernel(c, grid);
  const double eps = parse_single_eps(c, ks.opt);
  const double width = c.get_double("bump_width", 0.25);
  if (!(width >= 2.0 * grid.spacing() && width <= 1.0))
    throw ConfigError("field 'bump_width': must lie in [2h, 1]");
  const int lo = c.get_int("alpha_min_exp", -9);
  const int hi = c.get_int("alpha_max_exp", -1);
  if (lo >= hi) throw ConfigError("field 'alpha_min_exp' must be below 'alpha_max_exp'");
  if (hi > 0) throw ConfigError("field 'alpha_max_exp': levels above max |T f| have empty superlevel sets");
  Report rep;
  if (dry) return rep;

  const TruncatedOperator op(ks.K, grid, ks.opt);
  const Field f = parabolic_bump(grid, width);
  const double top = op.apply(f, eps).max_abs();
  std::vector<double> alphas;
  for (int e = lo; e <= hi; ++e) alphas.push_back(std::ldexp(top, e));
  const auto rows = weak_type_probe(op, f, alphas, eps);
  Table t{"weak_type", {"alpha", "measure", "statistic"}, {}};
  std::vector<double> stat;
  for (const auto& r : rows) {
    t.rows.push_back({r.alpha, r.measure, r.statistic});
    stat.push_back(r.statistic);
  }
  rep.add("tf_max", top);
  rep.add("weak_statistic_max", max_of(stat));
  rep.add("weak_statistic_min", min_of(stat));
  rep.add("weak_statistic_spread", min_of(stat) > 0.0 ? max_of(stat) / min_of(stat) : INFINITY);
  rep.add("alpha_span_log2", hi - lo);
  rep.tables = {t};
  rep.plots.push_back({"weak_type", "weak_type", "alpha", {"statistic"}, true, false});
  return rep;
}

// ---------------------------------------------------------------- test-decay

Report run_test_decay(const Config& c, bool dry) {
  const Grid grid = parse_grid(c, 2, 256, 16.0);
  if (grid.dim() != 2) throw ConfigError("field 'n': the decay probe is defined for n = 2");
  const auto ks = parse_kernel(c, grid);
  const auto eps = parse_eps(c, "eps", dyadic_ladder(2, 6), ks.opt);
  const double gamma = 1.0;
  Report rep;
  if (dry) return rep;

  const TruncatedOperator op(ks.K, grid, ks.opt);
  const Field f = decay_probe(grid);
  TestNormParams tp;
  tp.beta = 1.0;
  tp.gamma = gamma;
  tp.r = 1.0;
  tp.x0 = Point(grid.dim());
  tp.metric = MetricKind::Parabolic;
  const auto tn = test_norm(f, tp);
  const Point origin(grid.dim());
  const double target = grid.dim() + 1 + gamma;
  const auto input_fit = decay_exponent_fit(f, origin, MetricKind::Parabolic);
  rep.add("test_norm_input", tn.norm);
  rep.add("decay_exponent_input", input_fit.exponent);
  rep.add("decay_target", target);

  Table t{"decay", {"epsilon", "exponent", "r2"}, {}};
  std::vector<double> ex, r2, err;
  DecayFit last;
  for (double e : eps) {
    last = decay_exponent_fit(op.apply(f, e), origin, MetricKind::Parabolic);
    ex.push_back(last.exponent);
    r2.push_back(last.r2);
    err.push_back(std::abs(last.exponent - target) / target);
    t.rows.push_back({e, last.exponent, last.r2});
  }
  rep.add("decay_exponent_min", min_of(ex));
  rep.add("decay_exponent_max", max_of(ex));
  rep.add("decay_relative_error", max_of(err));
  rep.add("decay_r2_min", min_of(r2));
  Table shells{"shells", {"radius", "max_abs"}, {}};
  for (const auto& s : last.shells) shells.rows.push_back({s.argmax_norm, s.max_abs});
  rep.tables = {t, shells};
  rep.plots.push_back({"shells", "shells", "radius", {"max_abs"}, true, true});
  return rep;
}

// ---------------------------------------------------------------- almost-orth

Report run_almost_orth(const Config& c, bool dry) {
  const Grid grid = parse_grid(c, 2, 256, 8.0);
  const auto ks = parse_kernel(c, grid);
  const double eps = parse_single_eps(c, ks.opt);
  const MetricKind gm =
      as_config_error("generator_metric", [&] { return parse_metric_kind(c.get_string("generator_metric", "parabolic")); });
  const int j0 = c.get_int("j0", 2);
  const int max_offset = parse_positive(c, "max_offset", 4);
  const Generator g(Metric(gm, grid.dim()), grid);
  check_range(g, {j0, j0}, "j0");
  Report rep;
  if (dry) return rep;

  const TruncatedOperator op(ks.K, grid, ks.opt);
  const LinearOperator T = [&](const Field& f) { return op.apply(f, eps); };
  const auto fit = fit_almost_orthogonality(T, g, j0, max_offset);
  rep.add("orthogonality_epsilon", fit.epsilon);
  rep.add("orthogonality_log2_constant", fit.log2_constant);
  rep.add("orthogonality_r2", fit.r2);
  rep.add("orthogonality_vanishing", fit.vanishing);
  rep.add("orthogonality_points", static_cast<double>(fit.points.size()));
  Table t{"orthogonality", {"offset", "sup", "normalized_log2"}, {}};
  for (const auto& p : fit.points) t.rows.push_back({static_cast<double>(p.offset), p.sup, p.normalized_log2});
  rep.tables = {t};
  return rep;
}

// ---------------------------------------------------------------- lip-norms

Report run_lip_norms(const Config& c, bool dry) {
  const Grid grid = parse_grid(c, 2, 256, 8.0);
  const double alpha = parse_open_unit(c, "alpha", 0.5);
  const std::string wname = c.get_string("lip_weight", "decay");
  if (wname != "decay" && wname != "literal") throw ConfigError("field 'lip_weight': expected decay or literal");
  const LipWeight w = wname == "decay" ? LipWeight::Decay : LipWeight::Literal;
  const int random_offsets = c.get_int("random_offsets", 64);
  if (random_offsets < 0) throw ConfigError("field 'random_offsets': must be non-negative");
  const std::uint64_t seed = parse_seed(c);
  const Generator iso(Metric(MetricKind::Isotropic, grid.dim()), grid);
  const Generator par(Metric(MetricKind::Parabolic, grid.dim()), grid);
  const ScaleRange r1 = parse_range(c, "j_min", "j_max", iso.resolvable());
  const ScaleRange r2 = parse_range(c, "k_min", "k_max", par.resolvable());
  check_range(iso, r1, "j_min");
  check_range(par, r2, "k_min");
  const bool with_op = c.get_bool("operator", true);
  std::optional<KernelSetup> ks;
  double eps = 0.0;
  if (with_op) {
    ks = parse_kernel(c, grid);
    eps = parse_single_eps(c, ks->opt);
  }
  Report rep;
  if (dry) return rep;

  const auto offsets = lipschitz_offsets(grid, random_offsets, seed);
  Table t{"lip", {"field", "lip_iso", "lp_iso", "lip_par", "lp_par", "lip_com"}, {}};
  std::vector<double> ri, rp, com;
  const auto suite = smoke_suite(grid, seed);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Field& f = suite[i].field;
    const double li = lip_norm(f, alpha, MetricKind::Isotropic, offsets);
    const double lpi = lip_norm_lp(f, alpha, iso, r1, w);
    const double lh = lip_norm(f, alpha, MetricKind::Parabolic, offsets);
    const double lph = lip_norm_lp(f, alpha, par, r2, w);
    com.push_back(lip_norm_com(f, alpha));
    ri.push_back(lpi / li);
    rp.push_back(lph / lh);
    t.rows.push_back({static_cast<double>(i), li, lpi, lh, lph, com.back()});
  }
  rep.add("lip_ratio_iso_min", min_of(ri));
  rep.add("lip_ratio_iso_max", max_of(ri));
  rep.add("lip_ratio_par_min", min_of(rp));
  rep.add("lip_ratio_par_max", max_of(rp));
  rep.add("lip_ratio_min", std::min(min_of(ri), min_of(rp)));
  rep.add("lip_ratio_max", std::max(max_of(ri), max_of(rp)));
  rep.add("lip_com_max", max_of(com));
  rep.add("smallest_offset", grid.spacing());
  if (with_op) {
    const TruncatedOperator op(ks->K, grid, ks->opt);
    std::vector<double> ratio;
    for (const auto& nf : suite)
      ratio.push_back(lip_norm(op.apply(nf.field, eps), alpha, MetricKind::Parabolic, offsets) /
                      lip_norm(nf.field, alpha, MetricKind::Parabolic, offsets));
    rep.add("operator_lip_ratio_max", max_of(ratio));
  }
  rep.tables = {t};
  return rep;
}

// ---------------------------------------------------------------- hardy-ratio

Report run_hardy_ratio(const Config& c, bool dry) {
  const Grid grid = parse_grid(c, 2, 256, 8.0);
  const auto ks = parse_kernel(c, grid);
  const double eps = parse_single_eps(c, ks.opt);
  const Grid grid_c = with_samples(grid, c.get_int("compare_N", 2 * grid.samples()), "compare_N");
  const ScaleRange r1 = parse_range(c, "j_min", "j_max", {-2, 4});
  const ScaleRange r2 = parse_range(c, "k_min", "k_max", {-2, 4});
  const double p = c.get_double("p", 1.0);
  if (!(p > 0.0 && p <= 1.0)) throw ConfigError("field 'p': must lie in (0, 1]");
  const std::uint64_t seed = parse_seed(c);
  for (const Grid* g : {&grid, &grid_c}) {
    const Generator iso(Metric(MetricKind::Isotropic, g->dim()), *g);
    const Generator par(Metric(MetricKind::Parabolic, g->dim()), *g);
    check_range(iso, r1, "j_min");
    check_range(par, r2, "k_min");
  }
  Report rep;
  if (dry) return rep;

  auto ratios = [&](const Grid& g) {
    const Generator iso(Metric(MetricKind::Isotropic, g.dim()), g);
    const Generator par(Metric(MetricKind::Parabolic, g.dim()), g);
    const HardyContext ctx{&iso, r1, &par, r2};
    const TruncatedOperator op(ks.K, g, ks.opt);
    std::vector<double> out;
    for (const auto& nf : smoke_suite(g, seed))
      out.push_back(hardy_norm(op.apply(nf.field, eps), HardyVariant::Composite, p, ctx) /
                    hardy_norm(nf.field, HardyVariant::Composite, p, ctx));
    return out;
  };
  const auto rn = ratios(grid);
  const auto rc = ratios(grid_c);
  Table t{"hardy", {"field", "ratio", "ratio_compare"}, {}};
  std::vector<double> change;
  for (std::size_t i = 0; i < rn.size(); ++i) {
    t.rows.push_back({static_cast<double>(i), rn[i], rc[i]});
    change.push_back(rel_change(rn[i], rc[i]));
  }
  rep.add("hardy_ratio_max", max_of(rn));
  rep.add("hardy_ratio_min", min_of(rn));
  rep.add("hardy_ratio_max_compare", max_of(rc));
  rep.add("hardy_constant_change", rel_change(max_of(rn), max_of(rc)));
  rep.add("hardy_relative_change", max_of(change));
  rep.tables = {t};
  return rep;
}

// ---------------------------------------------------------------- registry

struct Entry {
  ExperimentInfo info;
  std::function<Report(const Config&, bool)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {{"calderon-condition", "partition of unity and Plancherel identities for g, g_h, g_com",
        merge({kRangeKeys, {"fields"}})},
       run_calderon_condition},
      {{"reconstruct", "discrete Calderon reconstruction residuals and lattice refinement",
        merge({kRangeKeys, {"fields"}})},
       run_reconstruct},
      {{"truncation-sweep", "L2 ratios and Cauchy differences over an eps ladder, with a non-cancellative control",
        merge({kKernelKeys, {"eps", "control", "field"}})},
       run_truncation_sweep},
      {{"cotlar", "fitted Cotlar constant at two resolutions",
        merge({kKernelKeys, {"eps", "compare_N", "delta", "p", "radii_ratio", "maximal_metric"}})},
       run_cotlar},
      {{"hormander", "Hormander integral over sampled pairs at two quadrature resolutions",
        merge({kKernelKeys, {"pairs", "scales", "refine"}})},
       run_hormander},
      {{"weak-type", "alpha |{|T f| > alpha}| / ||f||_1 over a dyadic alpha ladder",
        merge({kKernelKeys, {"epsilon", "bump_width", "alpha_min_exp", "alpha_max_exp"}})},
       run_weak_type},
      {{"test-decay", "decay exponent of T_eps applied to a parabolic test function", merge({kKernelKeys, {"eps"}})},
       run_test_decay},
      {{"almost-orth", "decay of sup |psi_j * T psi_j'| in |j - j'|",
        merge({kKernelKeys, {"epsilon", "generator_metric", "j0", "max_offset"}})},
       run_almost_orth},
      {{"lip-norms", "Lipschitz norms against their Littlewood-Paley characterisation",
        merge({kKernelKeys, kRangeKeys, {"alpha", "lip_weight", "random_offsets", "operator", "epsilon"}})},
       run_lip_norms},
      {{"hardy-ratio", "composite Hardy norm of T f over that of f at N and a comparison resolution",
        merge({kKernelKeys, kRangeKeys, {"epsilon", "compare_N", "p"}})},
       run_hardy_ratio},
  };
  return r;
}

const Entry& lookup(const Config& c) {
  const std::string name = c.require_string("experiment");
  for (const auto& e : registry())
    if (e.info.name == name) return e;
  throw ConfigError("field 'experiment': unknown experiment '" + name + "'");
}

void check_all_keys(const Config& c, const Entry& e) {
  Keys allowed = common_keys();
  allowed.insert(e.info.keys.begin(), e.info.keys.end());
  c.check_keys(allowed);
}

}  // namespace

const std::set<std::string>& common_keys() {
  static const Keys k = {"experiment", "description", "output_dir", "n", "N", "L", "seed"};
  return k;
}

const std::vector<ExperimentInfo>& experiments() {
  static const std::vector<ExperimentInfo> out = [] {
    std::vector<ExperimentInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return out;
}

void validate(const Config& c) {
  const Entry& e = lookup(c);
  check_all_keys(c, e);
  e.run(c, true);
}

Report run_experiment(const Config& c) {
  const Entry& e = lookup(c);
  check_all_keys(c, e);
  Report rep = e.run(c, false);
  rep.experiment = e.info.name;
  return rep;
}

}  // namespace mixhom::harness
