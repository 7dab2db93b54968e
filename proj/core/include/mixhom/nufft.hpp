#pragma once

#include <span>
#include <vector>

#include "mixhom/grid.hpp"

namespace mixhom {

/// Type-1 non-uniform FFT onto the dual grid of `grid`:
///   F(xi_m) = sum_p c_p exp(-i xi_m . y_p)
/// for arbitrary points y_p (flattened, grid.dim() coordinates each; wrapped
/// onto the torus). Gaussian gridding with oversampling 2; `spread` is the
/// half-width in fine cells (12 gives about 1e-12 relative accuracy).
/// Output is in FFT order.
std::vector<Complex> nufft_type1(const Grid& grid, std::span<const double> coords, std::span<const double> strengths,
                                 int spread = 12);

/// Direct O(P N^n) evaluation of the same sum; reference for tests and tiny inputs.
std::vector<Complex> direct_type1(const Grid& grid, std::span<const double> coords, std::span<const double> strengths);

}  // namespace mixhom
