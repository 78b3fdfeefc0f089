#include <benchmark/benchmark.h>

#include "mlosc/mlf.hpp"

using namespace mlosc;

static void NegRealSeries(benchmark::State& state) {
  NegRealEvaluator ev(MLOrder(1.2, 1.2), EvalPolicy{});
  double x = ev.effective_switch() * 0.8;
  for (auto _ : state) benchmark::DoNotOptimize(ev(x));
}
BENCHMARK(NegRealSeries);

static void NegRealAsymptotic(benchmark::State& state) {
  NegRealEvaluator ev(MLOrder(1.2, 1.2), EvalPolicy{});
  double x = ev.effective_switch() * 50.0;
  for (auto _ : state) benchmark::DoNotOptimize(ev(x));
}
BENCHMARK(NegRealAsymptotic);

static void ImagAxis(benchmark::State& state) {
  ImagAxisEvaluator ev(MLOrder(0.5, 0.7), EvalPolicy{});
  double t = static_cast<double>(state.range());
  for (auto _ : state) benchmark::DoNotOptimize(ev(t));
}
BENCHMARK(ImagAxis)->Arg(2)->Arg(100)->Arg(10000);

static void SeriesComplex(benchmark::State& state) {
  EvalPolicy pol;
  Complex z(0, static_cast<double>(state.range()));
  for (auto _ : state) benchmark::DoNotOptimize(ml_series(MLOrder(0.7, 1.0), z, pol));
}
BENCHMARK(SeriesComplex)->Arg(1)->Arg(10);
