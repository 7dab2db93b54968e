#include "mixhom/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <map>
#include <mutex>

#include "mixhom/geometry.hpp"

namespace mixhom {

namespace {

const Rule1D& reference_rule(int q) {
  static std::mutex mu;
  static std::map<int, Rule1D> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(q); it != cache.end()) return it->second;
  Rule1D r;
  // legendre_p_zeros returns the non-negative zeros in increasing order.
  const auto zeros = boost::math::legendre_p_zeros<double>(q);
  std::vector<double> pos;
  for (double z : zeros) pos.push_back(z);
  auto weight = [q](double x) {
    const double dp = boost::math::legendre_p_prime<double>(q, x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
    if (*it == 0.0) continue;
    r.nodes.push_back(-*it);
    r.weights.push_back(weight(*it));
  }
  for (double z : pos) {
    r.nodes.push_back(z);
    r.weights.push_back(weight(z));
  }
  return cache.emplace(q, std::move(r)).first->second;
}

}  // namespace

void Rule1D::append(const Rule1D& other) {
  nodes.insert(nodes.end(), other.nodes.begin(), other.nodes.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
}

Rule1D gauss_legendre(int q, double a, double b) {
  if (q < 1 || q > 512) throw InvalidArgument("Gauss-Legendre order must be in [1, 512]");
  const Rule1D& ref = reference_rule(q);
  Rule1D r;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  r.nodes.reserve(ref.size());
  r.weights.reserve(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    r.nodes.push_back(mid + half * ref.nodes[i]);
    r.weights.push_back(half * ref.weights[i]);
  }
  return r;
}

Rule1D composite_gauss(double a, double b, int panels, int q) {
  if (panels < 1) throw InvalidArgument("composite rule needs at least one panel");
  Rule1D r;
  const double w = (b - a) / panels;
  for (int i = 0; i < panels; ++i) r.append(gauss_legendre(q, a + i * w, a + (i + 1) * w));
  return r;
}

Rule1D power_graded(double a, double b, int panels, int q, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("grading power must be >= 1");
  const Rule1D u = composite_gauss(0.0, 1.0, panels, q);
  Rule1D r;
  r.nodes.reserve(u.size());
  r.weights.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double t = u.nodes[i];
    r.nodes.push_back(a + (b - a) * std::pow(t, p));
    r.weights.push_back((b - a) * p * std::pow(t, p - 1.0) * u.weights[i]);
  }
  return r;
}

Rule1D dyadic_gauss(double a, double b, int q) {
  if (!(a > 0.0 && b > a)) throw InvalidArgument("dyadic rule needs 0 < a < b");
  Rule1D r;
  double hi = b;
  while (hi > a) {
    const double lo = std::max(a, 0.5 * hi);
    r.append(gauss_legendre(q, lo, hi));
    hi = lo;
  }
  return r;
}

}  // namespace mixhom
