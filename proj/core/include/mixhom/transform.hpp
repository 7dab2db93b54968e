#pragma once

#include <span>
#include <vector>

#include "mixhom/grid.hpp"

namespace mixhom {

/// Continuum-normalised transform: F(xi) = h^n sum_x f(x) exp(-i xi.x).
///
/// With this scaling forward(f * g) = forward(f) forward(g), where
/// (f * g)(x) = h^n sum_y f(y) g(x - y) on the torus.
Spectrum forward(const Field& f);
Spectrum forward(const Grid& grid, std::span<const Complex> values);

/// Inverse of forward; returns the real part.
Field inverse(const Spectrum& s);
std::vector<Complex> inverse_complex(const Spectrum& s);

/// Periodic convolution h^n sum_y f(y) g(x - y).
Field convolve(const Field& f, const Field& g);

/// inverse(m * forward(f)) for a real or complex multiplier in FFT order.
Field apply_multiplier(const Field& f, const std::vector<double>& m);
Field apply_multiplier(const Field& f, const std::vector<Complex>& m);

/// Unnormalised in-place DFT of a dim-dimensional cube with `samples` points per axis.
/// sign = -1 is the forward exp(-2 pi i k x / N) convention.
void dft_inplace(std::span<Complex> data, int dim, int samples, int sign);

}  // namespace mixhom
