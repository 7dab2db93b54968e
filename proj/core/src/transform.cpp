#include "mixhom/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace mixhom {

namespace {

// FFTW planning is not thread-safe; execution with new-array execute is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int dim, int samples, int sign) {
    std::lock_guard lock(mu_);
    const auto key = std::make_tuple(dim, samples, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<int> dims(static_cast<std::size_t>(dim), samples);
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(samples);
    auto* scratch = fftw_alloc_complex(total);
    fftw_plan p = fftw_plan_dft(dim, dims.data(), scratch, scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, p);
    return p;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, p] : plans_) fftw_destroy_plan(p);
  }
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

// (-1)^(sum of FFT indices); equals (-1)^(sum of centred indices) since N is even.
inline bool odd_parity(const Grid& g, std::size_t flat) {
  const auto idx = g.unflatten(flat);
  int s = 0;
  for (int d = 0; d < g.dim(); ++d) s += idx[static_cast<std::size_t>(d)];
  return (s & 1) != 0;
}

}  // namespace

void dft_inplace(std::span<Complex> data, int dim, int samples, int sign) {
  fftw_plan p = PlanCache::instance().get(dim, samples, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

Spectrum forward(const Grid& grid, std::span<const Complex> values) {
  if (values.size() != grid.size()) throw InvalidArgument("forward: sample count does not match grid");
  std::vector<Complex> buf(values.begin(), values.end());
  dft_inplace(buf, grid.dim(), grid.samples(), -1);
  const double hn = grid.cell_volume();
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= odd_parity(grid, i) ? -hn : hn;
  return Spectrum(grid, std::move(buf));
}

Spectrum forward(const Field& f) {
  std::vector<Complex> buf(f.values().begin(), f.values().end());
  return forward(f.grid(), buf);
}

std::vector<Complex> inverse_complex(const Spectrum& s) {
  const Grid& grid = s.grid();
  std::vector<Complex> buf(s.values());
  const double scale = 1.0 / grid.volume();
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= odd_parity(grid, i) ? -scale : scale;
  dft_inplace(buf, grid.dim(), grid.samples(), +1);
  return buf;
}

Field inverse(const Spectrum& s) {
  const auto c = inverse_complex(s);
  Field out(s.grid());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
  return out;
}

Field convolve(const Field& f, const Field& g) {
  if (!(f.grid() == g.grid())) throw InvalidArgument("convolve: fields live on different grids");
  Spectrum a = forward(f);
  const Spectrum b = forward(g);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  return inverse(a);
}

Field apply_multiplier(const Field& f, const std::vector<double>& m) {
  Spectrum s = forward(f);
  s *= m;
  return inverse(s);
}

Field apply_multiplier(const Field& f, const std::vector<Complex>& m) {
  Spectrum s = forward(f);
  s *= m;
  return inverse(s);
}

}  // namespace mixhom
