#include "mixhom/profile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

namespace mixhom {

namespace {

using std::numbers::pi;

// Portable uniform draw in [-1, 1) from a 64-bit engine.
double symmetric_unit(std::mt19937_64& eng) { return 2.0 * static_cast<double>(eng() >> 11) * 0x1.0p-53 - 1.0; }

Profile random_profile(std::uint64_t seed, int dim, std::string id) {
  std::mt19937_64 eng(seed);
  std::vector<double> a(static_cast<std::size_t>(dim));
  std::vector<double> b(static_cast<std::size_t>(dim * dim), 0.0);
  for (auto& v : a) v = 0.25 * symmetric_unit(eng);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) b[static_cast<std::size_t>(i * dim + j)] = 0.25 * symmetric_unit(eng);
  return Profile(std::move(id), [a, b, dim](const Point& t) {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) {
      v += a[static_cast<std::size_t>(i)] * t[i];
      for (int j = i; j < dim; ++j) v += b[static_cast<std::size_t>(i * dim + j)] * t[i] * t[j];
    }
    return v;
  });
}

}  // namespace

Profile::Profile(std::string id, std::function<double(const Point&)> fn) : id_(std::move(id)), fn_(std::move(fn)) {
  if (!fn_) throw InvalidArgument("profile function is empty");
}

std::vector<std::string> catalog_ids() { return {"one", "odd", "harmonic", "tilted", "random:1"}; }

Profile make_profile(std::string_view id, MetricKind sphere, int dim) {
  if (dim < 2 || dim > kMaxDim) throw InvalidArgument("profile dimension must be 2 or 3");
  const std::string sid(id);
  if (id == "one") return Profile(sid, [](const Point&) { return 1.0; });
  if (id == "odd") return Profile(sid, [](const Point& t) { return t.last(); });
  if (id == "harmonic") return Profile(sid, [](const Point& t) { return t[0]; });
  if (id == "tilted") return Profile(sid, [](const Point& t) { return 1.0 + 0.5 * t.last(); });
  if (id.starts_with("random:")) {
    const auto digits = id.substr(7);
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
      throw InvalidArgument("random profile seed must be an unsigned integer: '" + sid + "'");
    return random_profile(seed, dim, sid);
  }
  if (id.starts_with("csv:")) return load_csv_profile(std::string(id.substr(4)), sphere, dim);
  throw InvalidArgument("unknown profile id '" + sid + "'");
}

double sphere_angle(const Point& theta, MetricKind sphere) {
  if (theta.dim() != 2) throw InvalidArgument("sphere_angle is defined for n = 2 only");
  double phi;
  if (sphere == MetricKind::Isotropic) {
    phi = std::atan2(theta[1], theta[0]);
  } else {
    const double s = std::sqrt(std::abs(theta[1]));
    phi = std::atan2(theta[1] < 0.0 ? -s : s, theta[0]);
  }
  if (phi < 0.0) phi += 2.0 * pi;
  return phi;
}

PeriodicSpline::PeriodicSpline(std::vector<double> x, std::vector<double> y, double period)
    : x_(std::move(x)), y_(std::move(y)), period_(period) {
  const std::size_t n = x_.size();
  if (n < 4 || y_.size() != n) throw InvalidArgument("periodic spline needs at least four knots");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(x_[i + 1] > x_[i])) throw InvalidArgument("spline knots must be strictly increasing");
  if (!(x_.back() - x_.front() < period)) throw InvalidArgument("spline knots must span less than one period");
  auto gap = [&](std::size_t i) { return i + 1 < n ? x_[i + 1] - x_[i] : x_[0] + period_ - x_[n - 1]; };
  auto yy = [&](std::size_t i) { return y_[i % n]; };
  // Cyclic tridiagonal system for second derivatives; Sherman-Morrison on the corner terms.
  std::vector<double> a(n), b(n), c(n), r(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double hm = gap((i + n - 1) % n), hp = gap(i);
    a[i] = hm;
    b[i] = 2.0 * (hm + hp);
    c[i] = hp;
    r[i] = 6.0 * ((yy(i + 1) - y_[i]) / hp - (y_[i] - yy(i + n - 1)) / hm);
  }
  const double alpha = c[n - 1], beta = a[0];
  const double gamma = -b[0];
  std::vector<double> bb = b;
  bb[0] -= gamma;
  bb[n - 1] -= alpha * beta / gamma;
  auto thomas = [&](std::vector<double> rhs) {
    std::vector<double> cp(n), dp(n);
    cp[0] = c[0] / bb[0];
    dp[0] = rhs[0] / bb[0];
    for (std::size_t i = 1; i < n; ++i) {
      const double den = bb[i] - a[i] * cp[i - 1];
      cp[i] = c[i] / den;
      dp[i] = (rhs[i] - a[i] * dp[i - 1]) / den;
    }
    std::vector<double> out(n);
    out[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) out[i] = dp[i] - cp[i] * out[i + 1];
    return out;
  };
  const auto xsol = thomas(r);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  const auto z = thomas(u);
  const double fact = (xsol[0] + beta * xsol[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
  m_.resize(n);
  for (std::size_t i = 0; i < n; ++i) m_[i] = xsol[i] - fact * z[i];
}

double PeriodicSpline::operator()(double t) const {
  const std::size_t n = x_.size();
  t = x_[0] + std::fmod(std::fmod(t - x_[0], period_) + period_, period_);
  std::size_t i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), t) - x_.begin());
  i = i == 0 ? n - 1 : i - 1;
  const std::size_t j = (i + 1) % n;
  const double x0 = x_[i];
  const double x1 = j == 0 ? x_[0] + period_ : x_[j];
  const double h = x1 - x0;
  const double A = (x1 - t) / h, B = (t - x0) / h;
  return A * y_[i] + B * y_[j] + ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[j]) * h * h / 6.0;
}

Profile load_csv_profile(const std::string& path, MetricKind sphere, int dim) {
  if (dim != 2) throw InvalidArgument("tabulated profiles are supported for n = 2 only");
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open profile table '" + path + "'");
  std::vector<double> xs, ys;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a, v;
    std::string rest;
    if (!(row >> a >> v) || (row >> rest)) {
      if (xs.empty() && lineno == 1) continue;  // header row
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected 'angle,value'");
    }
    if (!std::isfinite(a) || !std::isfinite(v))
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": non-finite entry");
    if (a < 0.0 || a >= 2.0 * pi) throw InvalidArgument(path + ":" + std::to_string(lineno) + ": angle outside [0, 2pi)");
    if (!xs.empty() && !(a > xs.back()))
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": angles must be strictly increasing");
    xs.push_back(a);
    ys.push_back(v);
  }
  if (xs.size() < 4) throw InvalidArgument(path + ": need at least four rows");
  auto spline = std::make_shared<PeriodicSpline>(std::move(xs), std::move(ys), 2.0 * pi);
  return Profile("csv:" + path, [spline, sphere](const Point& t) { return (*spline)(sphere_angle(t, sphere)); });
}

}  // namespace mixhom
