#include <benchmark/benchmark.h>

#include "perisched/ffs.hpp"
#include "perisched/instgen.hpp"
#include "perisched/packing.hpp"
#include "perisched/schedule.hpp"
#include "perisched/search.hpp"

namespace {

using namespace perisched;

// Seeded so every run measures the same instance.
const Generated& full_load_instance() {
  static const Generated generated = gen_general(GenConfig::desk(Rational(1), 42));
  return generated;
}

void BM_FfsLeftmost(benchmark::State& state) {
  const Instance& instance = full_load_instance().instance;
  OrderedList order = initial_order(instance);
  FfsWorkspace workspace(instance);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ffs_run(instance, order, {Method::leftmost, false}, workspace));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(order.size()));
}
BENCHMARK(BM_FfsLeftmost);

void BM_FfsPredecessor(benchmark::State& state) {
  const Instance& instance = full_load_instance().instance;
  OrderedList order = initial_order(instance);
  FfsWorkspace workspace(instance);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ffs_run(instance, order, {Method::predecessor, false}, workspace));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(order.size()));
}
BENCHMARK(BM_FfsPredecessor);

void BM_CheckFeasible(benchmark::State& state) {
  const Generated& generated = full_load_instance();
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_feasible(generated.instance, generated.witness));
  }
}
BENCHMARK(BM_CheckFeasible);

void BM_PackCanonical(benchmark::State& state) {
  const Instance& instance = full_load_instance().instance;
  int m = static_cast<int>(state.range(0)) % instance.num_resources();
  for (auto _ : state) {
    benchmark::DoNotOptimize(pack_canonical(instance, m));
  }
}
BENCHMARK(BM_PackCanonical)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
