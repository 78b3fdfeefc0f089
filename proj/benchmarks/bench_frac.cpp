#include <benchmark/benchmark.h>

#include "mlosc/frac.hpp"

using namespace mlosc;

static void CaputoPower(benchmark::State& state) {
  FracSpec spec(0.6, FunctionSpec::affine(0, 1), Interval(0, 2));
  auto f = FunctionSpec::monomial(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(caputo_deriv(spec, f, 1.4));
}
BENCHMARK(CaputoPower)->Unit(benchmark::kMicrosecond);

static void EigenResidual(benchmark::State& state) {
  auto curved = FunctionSpec::polynomial({0, 1, 0.5});
  Interval iv(0, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(eigen_residual(0.7, curved, iv, 1.0, 0.6));
}
BENCHMARK(EigenResidual)->Unit(benchmark::kMillisecond);
