#include <benchmark/benchmark.h>

#include "pmlwave/solver.hpp"

using namespace pmlwave;

static void BM_ModalStep(benchmark::State& state) {
  SolverConfig c;
  c.profile.alpha0 = 2.0;
  c.grid = RadialGrid{2.0, static_cast<int>(state.range(0))};
  c.dt = 0.5 * c.grid.dr();
  const ModalStepper stepper(c);
  ModalState s(1, Parity::Cos, c.grid.M);
  std::vector<double> f(c.grid.M + 1, 0.0);
  for (int j = 0; j <= c.grid.M / 4; ++j) f[j] = 1.0;
  for (auto _ : state) {
    stepper.step(s, f, 1.0);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * (c.grid.M + 1));
}
BENCHMARK(BM_ModalStep)->Arg(200)->Arg(800)->Arg(3200);

static void BM_DecomposeOffsetSource(benchmark::State& state) {
  const SourceSpec src = SourceSpec::indicator(0.25, 0.01, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_source(src, RadialGrid{2.0, 200}, 64));
}
BENCHMARK(BM_DecomposeOffsetSource);
