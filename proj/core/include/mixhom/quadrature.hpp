#pragma once

#include <vector>

namespace mixhom {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
  void append(const Rule1D& other);
  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// q-point Gauss-Legendre rule on [a, b]. Nodes come from Boost.Math; q in [1, 512].
Rule1D gauss_legendre(int q, double a = -1.0, double b = 1.0);

/// `panels` equal Gauss-Legendre panels of order q on [a, b].
Rule1D composite_gauss(double a, double b, int panels, int q);

/// Composite rule for s = a + (b - a) u^p, u in [0, 1]; clusters nodes at a.
/// Removes an integrable |s - a|^(-sigma) endpoint singularity when p >= 1/(1 - sigma).
Rule1D power_graded(double a, double b, int panels, int q, double p);

/// Geometric panels [b/2^(i+1), b/2^i] from b down to a, order q each.
Rule1D dyadic_gauss(double a, double b, int q);

}  // namespace mixhom
