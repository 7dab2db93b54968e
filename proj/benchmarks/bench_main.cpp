#include <benchmark/benchmark.h>

#include "mixhom/fields.hpp"
#include "mixhom/littlewood_paley.hpp"
#include "mixhom/maximal.hpp"
#include "mixhom/profile.hpp"
#include "mixhom/transform.hpp"
#include "mixhom/truncation.hpp"

using namespace mixhom;

namespace {

Grid grid_for(const benchmark::State& st) { return Grid(2, static_cast<int>(st.range(0)), 8.0); }

ProductKernel canonical() {
  return {2, 0.25, 2.75, make_profile("tilted", MetricKind::Isotropic, 2),
          make_profile("odd", MetricKind::Parabolic, 2)};
}

void BM_Convolve(benchmark::State& st) {
  const Grid g = grid_for(st);
  const auto suite = smoke_suite(g, 2);
  for (auto _ : st) benchmark::DoNotOptimize(convolve(suite[0].field, suite[1].field));
}
BENCHMARK(BM_Convolve)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SquareFunctionCom(benchmark::State& st) {
  const Grid g = grid_for(st);
  const Generator iso(Metric(MetricKind::Isotropic, 2), g), par(Metric(MetricKind::Parabolic, 2), g);
  const Field f = smoke_suite(g, 1)[0].field;
  for (auto _ : st) benchmark::DoNotOptimize(square_function_com(f, iso, {-2, 4}, par, {-2, 4}));
}
BENCHMARK(BM_SquareFunctionCom)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

// Cold multiplier build: a fresh operator each iteration, so no panel is cached.
void BM_TruncationMultiplier(benchmark::State& st) {
  const Grid g = grid_for(st);
  for (auto _ : st) {
    const TruncatedOperator op(canonical(), g);
    benchmark::DoNotOptimize(op.multiplier(0x1p-6));
  }
}
BENCHMARK(BM_TruncationMultiplier)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_HardyLittlewood(benchmark::State& st) {
  const Grid g = grid_for(st);
  const Field f = smoke_suite(g, 1)[0].field;
  const Metric m(MetricKind::Parabolic, 2);
  const auto radii = maximal_radii(g);
  for (auto _ : st) benchmark::DoNotOptimize(hl_maximal(f, m, radii));
}
BENCHMARK(BM_HardyLittlewood)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

// benchmark_main ships as LTO bytecode from an older compiler; define main here.
BENCHMARK_MAIN();
