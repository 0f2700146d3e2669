#include "fdfsi/timestepping.hpp"

#include <benchmark/benchmark.h>

using namespace fdfsi;

namespace {

void BM_Factorize(benchmark::State& state) {
  const AssembledProblem ap =
      assemble_problem(disk_case(), static_cast<int>(state.range(0)), CouplingKind::C1, AssemblyMode::Exact);
  for (auto _ : state) benchmark::DoNotOptimize(Factorization(ap.system.matrix));
  state.counters["unknowns"] = ap.system.size();
}
BENCHMARK(BM_Factorize)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_CondEstimate(benchmark::State& state) {
  const AssembledProblem ap =
      assemble_problem(disk_case(), static_cast<int>(state.range(0)), CouplingKind::C0, AssemblyMode::Exact);
  const Factorization lu(ap.system.matrix);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_cond2(lu));
}
BENCHMARK(BM_CondEstimate)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_TimeStep(benchmark::State& state) {
  const DynamicSetup setup = make_dynamic_setup(32, PhysicalParams{});
  const DynamicState s0 = init_state(setup);
  for (auto _ : state) benchmark::DoNotOptimize(advance(s0, setup));
}
BENCHMARK(BM_TimeStep)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
