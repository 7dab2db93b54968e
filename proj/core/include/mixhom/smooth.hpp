#pragma once

namespace mixhom {

/// exp(-1 / (1 - u^2)) on (-1, 1), zero elsewhere.
double bump(double u) noexcept;

/// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) noexcept;

/// Dyadic bump bump(log2 t), supported on t in (1/2, 2).
double dyadic_bump(double t) noexcept;

/// Littlewood-Paley profile bump(log2 t) / sqrt(sum_j bump(log2 t - j)^2).
/// Its squares over all dyadic dilates sum to exactly one on t > 0.
double lp_profile(double t) noexcept;

}  // namespace mixhom
