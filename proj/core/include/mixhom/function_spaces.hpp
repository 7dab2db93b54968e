#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mixhom/littlewood_paley.hpp"

namespace mixhom {

struct TestNormParams {
  double beta = 1.0;
  double gamma = 1.0;
  double r = 1.0;
  Point x0;
  MetricKind metric = MetricKind::Parabolic;
};

struct TestNormResult {
  /// max(decay, holder).
  double norm = 0.0;
  /// Smallest C with |f(x)| <= C r^gamma / (r + |x - x0|)^(Q + gamma).
  double decay = 0.0;
  /// Smallest C with |f(x) - f(y)| <= C (|x - y| / (r + |x - x0|))^beta r^gamma / (r + |x - x0|)^(Q + gamma)
  /// over sampled pairs with |x - y| <= (r + |x - x0|) / 2.
  double holder = 0.0;
};

/// Test-function norm on the grid. Requires |mean f| <= 1e-8 max |f|.
TestNormResult test_norm(const Field& f, const TestNormParams& p);

struct ShellSample {
  double inner = 0.0;
  double max_abs = 0.0;
  double argmax_norm = 0.0;
};

struct DecayFit {
  /// a in max_shell |f| ~ (1 + |x|)^-a.
  double exponent = 0.0;
  double r2 = 0.0;
  std::vector<ShellSample> shells;
};

/// Regresses log(shell max |f|) on log(1 + |x_argmax - x0|) over dyadic shells
/// [2^i, 2^(i+1)) between r_min and r_max (default L/2).
DecayFit decay_exponent_fit(const Field& f, const Point& x0, MetricKind metric, double r_min = 1.0, double r_max = 0.0);

/// Integer cell offsets used by the Lipschitz norms.
using Offset = std::array<int, kMaxDim>;

/// Axis and diagonal offsets of every length 1..N/4 cells, plus `random_count` seeded random offsets.
std::vector<Offset> lipschitz_offsets(const Grid& grid, int random_count = 64, std::uint64_t seed = 7);

/// sup_u ||f(. + u) - f||_inf / |u|_m^alpha.
double lip_norm(const Field& f, double alpha, MetricKind metric, const std::vector<Offset>& offsets);

/// sup_{u, v} ||Delta_u Delta_v f||_inf / (|u|_e^alpha |v|_h^alpha), u = (u', 0), v = (0, v_n).
double lip_norm_com(const Field& f, double alpha, int max_cells = 0);

/// Scale weighting for the Littlewood-Paley Lipschitz characterisation.
/// Decay: 2^(j alpha) |psi_j * f|. Literal: 2^(-j alpha) |psi_j * f|.
enum class LipWeight { Decay, Literal };

/// max_j w_j ||psi_j * f||_inf over the scale range.
double lip_norm_lp(const Field& f, double alpha, const Generator& g, ScaleRange r, LipWeight w = LipWeight::Decay);

}  // namespace mixhom
