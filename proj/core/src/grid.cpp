#include "mixhom/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mixhom {

Grid::Grid(int dim, int samples, double half_extent) : dim_(dim), n_(samples), half_(half_extent) {
  if (dim < 2 || dim > kMaxDim) throw InvalidArgument("grid dimension must be 2 or 3");
  if (samples < 4 || (samples & (samples - 1)) != 0) throw InvalidArgument("grid size N must be a power of two >= 4");
  if (!(half_extent > 0.0) || !std::isfinite(half_extent)) throw InvalidArgument("grid half-extent L must be positive");
  size_ = 1;
  for (int d = 0; d < dim; ++d) size_ *= static_cast<std::size_t>(samples);
}

double Grid::cell_volume() const noexcept { return std::pow(spacing(), dim_); }

double Grid::volume() const noexcept { return std::pow(2.0 * half_, dim_); }

double Grid::frequency_step() const noexcept { return std::numbers::pi / half_; }

std::array<int, kMaxDim> Grid::unflatten(std::size_t flat) const noexcept {
  std::array<int, kMaxDim> idx{};
  for (int d = dim_ - 1; d >= 0; --d) {
    idx[static_cast<std::size_t>(d)] = static_cast<int>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
  }
  return idx;
}

std::size_t Grid::flatten(const std::array<int, kMaxDim>& idx) const noexcept {
  std::size_t flat = 0;
  for (int d = 0; d < dim_; ++d) {
    int i = idx[static_cast<std::size_t>(d)] % n_;
    if (i < 0) i += n_;
    flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
  }
  return flat;
}

Point Grid::coordinate(std::size_t flat) const {
  const auto idx = unflatten(flat);
  Point p(dim_);
  const double h = spacing();
  for (int d = 0; d < dim_; ++d) p[d] = -half_ + h * idx[static_cast<std::size_t>(d)];
  return p;
}

Point Grid::frequency(std::size_t flat) const {
  const auto idx = unflatten(flat);
  Point p(dim_);
  const double dk = frequency_step();
  for (int d = 0; d < dim_; ++d) p[d] = dk * centred(idx[static_cast<std::size_t>(d)]);
  return p;
}

Field::Field(const Grid& grid) : grid_(grid), v_(grid.size(), 0.0) {}

Field::Field(const Grid& grid, std::vector<double> values) : grid_(grid), v_(std::move(values)) {
  if (v_.size() != grid_.size()) throw InvalidArgument("field sample count does not match grid");
}

Field Field::sample(const Grid& grid, const std::function<double(const Point&)>& f) {
  Field out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) out.v_[i] = f(grid.coordinate(i));
  return out;
}

double Field::max_abs() const noexcept {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

double Field::sum() const noexcept {
  double s = 0.0;
  for (double x : v_) s += x;
  return s;
}

double Field::integral() const noexcept { return sum() * grid_.cell_volume(); }

double Field::mean() const noexcept { return sum() / static_cast<double>(v_.size()); }

Field Field::abs() const {
  Field r(*this);
  for (double& x : r.v_) x = std::abs(x);
  return r;
}

void Field::check_same(const Field& o) const {
  if (!(grid_ == o.grid_)) throw InvalidArgument("fields live on different grids");
}

Field& Field::operator+=(const Field& o) {
  check_same(o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  check_same(o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

Field& Field::operator*=(double s) noexcept {
  for (double& x : v_) x *= s;
  return *this;
}

Spectrum::Spectrum(const Grid& grid) : grid_(grid), v_(grid.size()) {}

Spectrum::Spectrum(const Grid& grid, std::vector<Complex> values) : grid_(grid), v_(std::move(values)) {
  if (v_.size() != grid_.size()) throw InvalidArgument("spectrum sample count does not match grid");
}

Spectrum& Spectrum::operator*=(const std::vector<double>& m) {
  if (m.size() != v_.size()) throw InvalidArgument("multiplier size does not match spectrum");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] *= m[i];
  return *this;
}

Spectrum& Spectrum::operator*=(const std::vector<Complex>& m) {
  if (m.size() != v_.size()) throw InvalidArgument("multiplier size does not match spectrum");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] *= m[i];
  return *this;
}

double lp_norm(const Field& f, double p) {
  if (std::isinf(p) && p > 0) return f.max_abs();
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm requires p >= 1");
  const double scale = f.max_abs();
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : f.values()) s += std::pow(std::abs(x) / scale, p);
  return scale * std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

double weak_distribution(const Field& f, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("weak_distribution requires alpha > 0");
  std::size_t count = 0;
  for (double x : f.values())
    if (std::abs(x) > alpha) ++count;
  return static_cast<double>(count) * f.grid().cell_volume();
}

Point torus_difference(const Grid& grid, const Point& x, const Point& y) {
  Point d = x - y;
  const double period = 2.0 * grid.half_extent();
  for (int i = 0; i < d.dim(); ++i) d[i] -= period * std::round(d[i] / period);
  return d;
}

}  // namespace mixhom
