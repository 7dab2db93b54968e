#pragma once

#include <functional>
#include <vector>

#include "mixhom/littlewood_paley.hpp"

namespace mixhom {

using LinearOperator = std::function<Field(const Field&)>;

/// Spectrum of the mixed wavelet: psi_hat_jk = psi_hat^1_j psi_hat^2_k (FFT order).
std::vector<double> psi_jk_multiplier(const Generator& iso, const Generator& par, int j, int k);

/// Spatial psi_jk = psi^1_j * psi^2_k, centred at the origin.
Field psi_jk(const Generator& iso, const Generator& par, int j, int k);

struct ReconstructionReport {
  /// ||f - f_rec||_2 / ||f||_2.
  double residual = 0.0;
  /// sum_{j,k,I} |I| |psi_jk * f(x_I)|^2 / ||f||_2^2.
  double frame_energy_ratio = 0.0;
  /// Number of (j, k) pairs whose spectra overlap.
  int active_pairs = 0;
};

struct Reconstruction {
  Field field;
  ReconstructionReport report;
};

/// Discrete Calderon synthesis
///   f_rec = sum_{j,k} sum_I |I| psi_jk(x - x_I) (psi_jk * f)(x_I)
/// over lattice rectangles I (see lattice_steps).
Reconstruction calderon_reconstruct(const Field& f, const Generator& iso, ScaleRange r1, const Generator& par,
                                    ScaleRange r2, const LatticeOptions& opt = {});

struct ProbeResult {
  Field field;
  double sup = 0.0;
};

/// psi_j * T(psi_j') for one generator.
ProbeResult almost_orthogonality_probe(const LinearOperator& op, const Generator& g, int j, int jp);

struct OrthogonalityPoint {
  int offset = 0;
  double sup = 0.0;
  /// log2(max(sup, floor) / 2^(min(j, j') Q)).
  double normalized_log2 = 0.0;
};

struct OrthogonalityFit {
  double epsilon = 0.0;
  double log2_constant = 0.0;
  double r2 = 0.0;
  /// Offsets whose probe is below the floor (exact spectral disjointness).
  int vanishing = 0;
  std::vector<OrthogonalityPoint> points;
};

/// Fits log2(sup / 2^(min(j,j') Q)) ~ log2 C - eps |j - j'| over j' = j0 - d for every
/// resolvable j' with |d| <= max_offset. Sups below floor_rel * max(sup) are clamped to that floor.
OrthogonalityFit fit_almost_orthogonality(const LinearOperator& op, const Generator& g, int j0, int max_offset,
                                          double floor_rel = 1e-15);

}  // namespace mixhom
