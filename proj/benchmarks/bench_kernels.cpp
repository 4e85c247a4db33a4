#include <benchmark/benchmark.h>

#include "nmsqueeze/circulant.hpp"
#include "nmsqueeze/fock_oracle.hpp"
#include "nmsqueeze/squeeze_algebra.hpp"
#include "nmsqueeze/wigner.hpp"

using namespace nmsqueeze;

static void BM_ShiftExponentialSpectral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shift_exponential(n, -0.7));
}
BENCHMARK(BM_ShiftExponentialSpectral)->Arg(4)->Arg(16)->Arg(64);

static void BM_ShiftExponentialSeries(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix m = -0.7 * cyclic_shift(n).dense();
  for (auto _ : state) benchmark::DoNotOptimize(series_expm(m));
}
BENCHMARK(BM_ShiftExponentialSeries)->Arg(4)->Arg(16)->Arg(64);

static void BM_NormalOrderedForm(benchmark::State& state) {
  const SqueezeParams params(static_cast<int>(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(normal_ordered_form(params));
}
BENCHMARK(BM_NormalOrderedForm)->Arg(4)->Arg(16)->Arg(64);

static void BM_WignerSlice(benchmark::State& state) {
  const auto wigner = wigner_state({4, 0.5});
  GridSliceSpec spec;
  spec.range_a = {-2, 2, 101};
  spec.range_b = {-2, 2, 101};
  for (auto _ : state) benchmark::DoNotOptimize(slice_grid(wigner, spec));
}
BENCHMARK(BM_WignerSlice);

static void BM_FockOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int cutoff = static_cast<int>(state.range(1));
  for (auto _ : state) {
    const auto generator = fock::build_generator({n, 0.25}, cutoff);
    benchmark::DoNotOptimize(fock::apply_squeeze(generator));
  }
}
BENCHMARK(BM_FockOracle)->Args({2, 24})->Args({3, 8})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
