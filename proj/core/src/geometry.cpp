#include "mixhom/geometry.hpp"

#include <algorithm>

namespace mixhom {

Point::Point(int n) : n_(n) {
  if (n < 1 || n > kMaxDim) throw InvalidArgument("point dimension must be in [1, 3]");
}

Point::Point(std::initializer_list<double> coords) : n_(static_cast<int>(coords.size())) {
  if (n_ < 1 || n_ > kMaxDim) throw InvalidArgument("point dimension must be in [1, 3]");
  std::copy(coords.begin(), coords.end(), c_.begin());
}

double Point::head_norm2() const noexcept {
  double s = 0.0;
  for (int i = 0; i + 1 < n_; ++i) s += c_[static_cast<std::size_t>(i)] * c_[static_cast<std::size_t>(i)];
  return s;
}

Point operator+(const Point& a, const Point& b) {
  if (a.n_ != b.n_) throw InvalidArgument("point dimension mismatch");
  Point r(a.n_);
  for (int i = 0; i < a.n_; ++i) r[i] = a[i] + b[i];
  return r;
}

Point operator-(const Point& a, const Point& b) {
  if (a.n_ != b.n_) throw InvalidArgument("point dimension mismatch");
  Point r(a.n_);
  for (int i = 0; i < a.n_; ++i) r[i] = a[i] - b[i];
  return r;
}

Point operator-(const Point& a) {
  Point r(a.n_);
  for (int i = 0; i < a.n_; ++i) r[i] = -a[i];
  return r;
}

std::string_view to_string(MetricKind kind) {
  return kind == MetricKind::Isotropic ? "isotropic" : "parabolic";
}

MetricKind parse_metric_kind(std::string_view name) {
  if (name == "isotropic" || name == "e") return MetricKind::Isotropic;
  if (name == "parabolic" || name == "h") return MetricKind::Parabolic;
  throw InvalidArgument("unknown metric '" + std::string(name) + "'");
}

Metric::Metric(MetricKind kind, int dim) : kind_(kind), dim_(dim) {
  if (dim < 2 || dim > kMaxDim) throw InvalidArgument("metric dimension must be 2 or 3");
}

void Metric::check(const Point& x) const {
  if (x.dim() != dim_) throw InvalidArgument("point dimension does not match metric");
}

double Metric::norm(const Point& x) const {
  check(x);
  return kind_ == MetricKind::Isotropic ? isotropic_norm(x) : parabolic_norm(x);
}

Point Metric::dilate(const Point& x, double delta) const {
  check(x);
  if (!(delta > 0.0)) throw InvalidArgument("dilation factor must be positive");
  Point r = x;
  for (int i = 0; i + 1 < dim_; ++i) r[i] *= delta;
  r[dim_ - 1] *= kind_ == MetricKind::Isotropic ? delta : delta * delta;
  return r;
}

double metric_norm(const Point& x, const Metric& m) { return m.norm(x); }

Point dilate_point(const Point& x, double delta, const Metric& m) { return m.dilate(x, delta); }

}  // namespace mixhom
