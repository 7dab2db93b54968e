#include "mixhom/nufft.hpp"

#include <cmath>
#include <numbers>

#include "mixhom/transform.hpp"

namespace mixhom {

namespace {

using std::numbers::pi;

void check_inputs(const Grid& grid, std::span<const double> coords, std::span<const double> strengths) {
  if (coords.size() != strengths.size() * static_cast<std::size_t>(grid.dim()))
    throw InvalidArgument("nufft: coordinate count does not match strengths");
}

}  // namespace

std::vector<Complex> nufft_type1(const Grid& grid, std::span<const double> coords, std::span<const double> strengths,
                                 int spread) {
  check_inputs(grid, coords, strengths);
  if (spread < 2 || spread > 16) throw InvalidArgument("nufft: spreading half-width must be in [2, 16]");
  const int n = grid.dim();
  const int N = grid.samples();
  const int M = 2 * N;
  const double L = grid.half_extent();
  const double dx = 2.0 * pi / M;
  // Greengard-Lee parameter for oversampling ratio 2.
  const double tau = pi * spread / (3.0 * static_cast<double>(N) * N);
  const int width = 2 * spread;

  std::size_t total = 1;
  for (int d = 0; d < n; ++d) total *= static_cast<std::size_t>(M);
  std::vector<Complex> fine(total);

  std::vector<double> wts(static_cast<std::size_t>(n * width));
  std::vector<int> idx(static_cast<std::size_t>(n * width));
  const std::size_t P = strengths.size();
  for (std::size_t p = 0; p < P; ++p) {
    const double c = strengths[p];
    if (c == 0.0) continue;
    for (int d = 0; d < n; ++d) {
      double x = pi * (coords[p * static_cast<std::size_t>(n) + static_cast<std::size_t>(d)] + L) / L;
      x -= 2.0 * pi * std::floor(x / (2.0 * pi));
      const int i0 = static_cast<int>(std::floor(x / dx));
      for (int l = 0; l < width; ++l) {
        const int k = i0 - spread + 1 + l;
        const double diff = x - k * dx;
        wts[static_cast<std::size_t>(d * width + l)] = std::exp(-diff * diff / (4.0 * tau));
        idx[static_cast<std::size_t>(d * width + l)] = ((k % M) + M) % M;
      }
    }
    if (n == 2) {
      for (int a = 0; a < width; ++a) {
        const double wa = c * wts[static_cast<std::size_t>(a)];
        const std::size_t row = static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]) * static_cast<std::size_t>(M);
        for (int b = 0; b < width; ++b)
          fine[row + static_cast<std::size_t>(idx[static_cast<std::size_t>(width + b)])] +=
              wa * wts[static_cast<std::size_t>(width + b)];
      }
    } else {
      for (int a = 0; a < width; ++a) {
        const double wa = c * wts[static_cast<std::size_t>(a)];
        const std::size_t pa = static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]);
        for (int b = 0; b < width; ++b) {
          const double wb = wa * wts[static_cast<std::size_t>(width + b)];
          const std::size_t pb = (pa * static_cast<std::size_t>(M) + static_cast<std::size_t>(idx[static_cast<std::size_t>(width + b)])) *
                                 static_cast<std::size_t>(M);
          for (int e = 0; e < width; ++e)
            fine[pb + static_cast<std::size_t>(idx[static_cast<std::size_t>(2 * width + e)])] +=
                wb * wts[static_cast<std::size_t>(2 * width + e)];
        }
      }
    }
  }

  dft_inplace(fine, n, M, -1);

  // Deconvolve the Gaussian and pick the centred band; (-1)^m accounts for the shift y = x L / pi - L.
  std::vector<double> deconv(static_cast<std::size_t>(N));
  const double pref = std::sqrt(pi / tau) / M;
  for (int k = 0; k < N; ++k) {
    const int m = grid.centred(k);
    deconv[static_cast<std::size_t>(k)] = pref * std::exp(static_cast<double>(m) * m * tau) * ((m & 1) ? -1.0 : 1.0);
  }
  std::vector<Complex> out(grid.size());
  for (std::size_t f = 0; f < out.size(); ++f) {
    const auto k = grid.unflatten(f);
    std::size_t src = 0;
    double scale = 1.0;
    for (int d = 0; d < n; ++d) {
      const int m = grid.centred(k[static_cast<std::size_t>(d)]);
      src = src * static_cast<std::size_t>(M) + static_cast<std::size_t>((m + M) % M);
      scale *= deconv[static_cast<std::size_t>(k[static_cast<std::size_t>(d)])];
    }
    out[f] = fine[src] * scale;
  }
  return out;
}

std::vector<Complex> direct_type1(const Grid& grid, std::span<const double> coords, std::span<const double> strengths) {
  check_inputs(grid, coords, strengths);
  const int n = grid.dim();
  std::vector<Complex> out(grid.size());
  for (std::size_t f = 0; f < out.size(); ++f) {
    const Point xi = grid.frequency(f);
    Complex s = 0.0;
    for (std::size_t p = 0; p < strengths.size(); ++p) {
      double phase = 0.0;
      for (int d = 0; d < n; ++d) phase += xi[d] * coords[p * static_cast<std::size_t>(n) + static_cast<std::size_t>(d)];
      s += strengths[p] * std::polar(1.0, -phase);
    }
    out[f] = s;
  }
  return out;
}

}  // namespace mixhom
