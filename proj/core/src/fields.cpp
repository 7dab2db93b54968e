#include "mixhom/fields.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "mixhom/smooth.hpp"
#include "mixhom/transform.hpp"

namespace mixhom {

namespace {

double unit_draw(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

double sq(const Point& x) { return x.head_norm2() + x.last() * x.last(); }

double mexican_hat(const Point& x) {
  const double r2 = sq(x);
  return (x.dim() - r2) * std::exp(-0.5 * r2);
}

// Smooth taper: 1 for |x_i| <= 3L/4, 0 at |x_i| = L.
double box_taper(const Grid& grid, const Point& x) {
  const double L = grid.half_extent();
  double w = 1.0;
  for (int d = 0; d < x.dim(); ++d) w *= 1.0 - smooth_step((std::abs(x[d]) - 0.75 * L) / (0.25 * L));
  return w;
}

}  // namespace

std::vector<NamedField> smoke_suite(const Grid& grid, std::uint64_t seed) {
  const int n = grid.dim();
  std::vector<NamedField> out;
  out.push_back({"dn_gaussian", Field::sample(grid, [](const Point& x) { return x.last() * std::exp(-0.5 * sq(x)); })});
  out.push_back({"d1_gaussian", Field::sample(grid, [](const Point& x) { return x[0] * std::exp(-0.5 * sq(x)); })});
  out.push_back({"mexican_hat", Field::sample(grid, mexican_hat)});
  const double w = std::pow(2.0, -0.5 * (n + 1));
  out.push_back({"parabolic_dog", Field::sample(grid, [w](const Point& x) {
                   return std::exp(-2.0 * sq(x)) - w * std::exp(-x.head_norm2() - 0.5 * x.last() * x.last());
                 })});
  std::mt19937_64 eng(seed);
  struct Hat {
    Point c;
    double a;
    double s;
  };
  std::vector<Hat> hats;
  for (int i = 0; i < 4; ++i) {
    Point c(n);
    for (int d = 0; d < n; ++d) c[d] = 4.0 * unit_draw(eng) - 2.0;
    hats.push_back({c, 2.0 * unit_draw(eng) - 1.0, 0.6 + 0.6 * unit_draw(eng)});
  }
  out.push_back({"hat_mixture", Field::sample(grid, [hats](const Point& x) {
                   double v = 0.0;
                   for (const auto& h : hats) {
                     Point y = x - h.c;
                     for (int d = 0; d < y.dim(); ++d) y[d] /= h.s;
                     v += h.a * mexican_hat(y);
                   }
                   return v;
                 })});
  // Sampling leaves a mean of order exp(-L^2/2); remove it so every field is exactly mean-zero.
  for (auto& nf : out) {
    const double mu = nf.field.mean();
    for (double& v : nf.field.values()) v -= mu;
  }
  return out;
}

Field in_band_projection(const Field& f, const Generator& iso, ScaleRange r1, const Generator& par, ScaleRange r2) {
  Spectrum s = forward(f);
  s *= in_band_mask(iso, r1, par, r2);
  return inverse(s);
}

Field random_in_band(const Generator& iso, ScaleRange r1, const Generator& par, ScaleRange r2, std::uint64_t seed,
                     int terms) {
  const Grid& grid = iso.grid();
  const auto mask = in_band_mask(iso, r1, par, r2);
  const int N = grid.samples();
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] == 0.0) continue;
    const auto k = grid.unflatten(i);
    bool nyquist = false;
    for (int d = 0; d < grid.dim(); ++d) nyquist = nyquist || k[static_cast<std::size_t>(d)] == N / 2;
    if (!nyquist) candidates.push_back(i);
  }
  if (candidates.empty()) throw InvalidArgument("in-band set is empty on this grid");
  std::mt19937_64 eng(seed);
  Spectrum s(grid);
  for (int t = 0; t < terms; ++t) {
    const std::size_t i = candidates[eng() % candidates.size()];
    const Complex c = std::polar(0.5 + unit_draw(eng), 2.0 * std::numbers::pi * unit_draw(eng));
    auto k = grid.unflatten(i);
    for (int d = 0; d < grid.dim(); ++d) k[static_cast<std::size_t>(d)] = (N - k[static_cast<std::size_t>(d)]) % N;
    s[i] += c;
    s[grid.flatten(k)] += std::conj(c);
  }
  return inverse(s);
}

Field decay_probe(const Grid& grid) {
  return Field::sample(grid, [&grid](const Point& x) {
    const double rho = parabolic_norm(x);
    if (rho < 0.25) return 0.0;
    const double on = smooth_step((rho - 0.25) / 0.25);
    return box_taper(grid, x) * on * (x[0] / rho) * std::pow(1.0 + rho, -4.0);
  });
}

Field parabolic_bump(const Grid& grid, double width) {
  Field f = Field::sample(grid, [width](const Point& x) {
    const double w2 = width * width;
    return std::exp(-0.5 * (x.head_norm2() / w2 + x.last() * x.last() / (w2 * w2)));
  });
  const double l1 = lp_norm(f, 1.0);
  f *= 1.0 / l1;
  return f;
}

}  // namespace mixhom
