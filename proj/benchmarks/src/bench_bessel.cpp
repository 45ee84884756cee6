#include <benchmark/benchmark.h>

#include "pmlwave/bessel.hpp"

using namespace pmlwave;

static void BM_BesselJReal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j(n, x));
    x = x < 100.0 ? x + 0.37 : 0.1;
  }
}
BENCHMARK(BM_BesselJReal)->Arg(0)->Arg(3)->Arg(20);

static void BM_Hankel1Complex(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double w = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hankel1(n, Complex(w * 2.4, 2.4)));
    w = w < 50.0 ? w + 0.61 : 0.5;
  }
}
BENCHMARK(BM_Hankel1Complex)->Arg(0)->Arg(2)->Arg(8);

static void BM_HankelRatio(benchmark::State& state) {
  double w = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hankel_ratio(1, w, 2.0, 3.0));
    w = w < 50.0 ? w + 0.25 : 0.0;
  }
}
BENCHMARK(BM_HankelRatio);

static void BM_BesselMoment(benchmark::State& state) {
  double w = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_moment(4, w));
    w = w < 1e4 ? w * 1.1 : 0.01;
  }
}
BENCHMARK(BM_BesselMoment);
