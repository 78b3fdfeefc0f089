#include <benchmark/benchmark.h>

#include "mlosc/quadrature.hpp"

using namespace mlosc;

static IntegralSpec default_spec() {
  return {MLOrder(0.5, 0.7), Interval(0, 1), FunctionSpec::affine(2, 1),
          FunctionSpec::constant(1.0), Variant::direct};
}

static void OscIntegral(benchmark::State& state) {
  OscIntegrator integ(default_spec(), QuadPolicy{});
  double lambda = static_cast<double>(state.range());
  for (auto _ : state) benchmark::DoNotOptimize(integ.integrate(lambda));
}
BENCHMARK(OscIntegral)->Arg(10)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
