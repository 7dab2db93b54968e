#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixhom/littlewood_paley.hpp"

namespace mixhom {

struct NamedField {
  std::string name;
  Field field;
};

/// Five smooth, localised, mean-zero fields (Gaussian derivatives, a Mexican hat, a
/// parabolic difference of Gaussians, a seeded mixture of shifted hats).
std::vector<NamedField> smoke_suite(const Grid& grid, std::uint64_t seed = 1);

/// Keeps only frequencies with both metric norms inside the scale ranges.
Field in_band_projection(const Field& f, const Generator& iso, ScaleRange r1, const Generator& par, ScaleRange r2);

/// Random real trigonometric polynomial whose spectrum lies in the in-band set and avoids the
/// unpaired Nyquist indices. `terms` Hermitian pairs with uniform amplitudes and phases.
Field random_in_band(const Generator& iso, ScaleRange r1, const Generator& par, ScaleRange r2, std::uint64_t seed,
                     int terms = 64);

/// Mean-zero field with |f| <= (1 + |x|_h)^-4 and equality along the positive x_1 axis:
/// (x_1 / |x|_h) (1 + |x|_h)^-4, switched off smoothly for |x|_h < 1/2 and tapered
/// near the boundary of the box.
Field decay_probe(const Grid& grid);

/// Normalised parabolic bump exp(-(|x'|^2 / w^2 + x_n^2 / w^4) / 2) scaled to unit L1 norm.
Field parabolic_bump(const Grid& grid, double width);

}  // namespace mixhom
