#include <benchmark/benchmark.h>

#include "qsearch/complexity.hpp"
#include "qsearch/entanglement.hpp"
#include "qsearch/reduced_state.hpp"
#include "qsearch/search.hpp"

namespace {

void BM_SimulateStatevector(benchmark::State& state) {
  const auto inst = qsearch::make_instance(static_cast<int>(state.range(0)), 0);
  const auto k = inst.rotation_steps();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsearch::simulate_statevector(inst, k));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(k * inst.size()));
}
BENCHMARK(BM_SimulateStatevector)->DenseRange(8, 16, 4);

void BM_PartialTrace(benchmark::State& state) {
  const auto inst = qsearch::make_instance(static_cast<int>(state.range(0)), 0);
  const auto psi = qsearch::closed_form_state(inst, 1).materialize();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsearch::partial_trace_single_qubit(psi, 0));
  }
}
BENCHMARK(BM_PartialTrace)->DenseRange(10, 20, 5);

void BM_Table1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qsearch::table1(1, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Table1)->Arg(8)->Arg(20)->Arg(30);

void BM_SpeedupScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qsearch::speedup_entanglement_scan(3, 20));
}
BENCHMARK(BM_SpeedupScan);

void BM_SeparabilityProfile(benchmark::State& state) {
  const auto inst = qsearch::make_instance(static_cast<int>(state.range(0)), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsearch::separability_profile(inst, inst.rotation_steps()));
  }
}
BENCHMARK(BM_SeparabilityProfile)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
