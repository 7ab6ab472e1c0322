// Microbenchmarks for the packing hot paths. The CLI `bench` subcommand is
// the scaling experiment; these isolate per-operation costs.

#include <benchmark/benchmark.h>

#include <map>

#include "tmgen/bench.hpp"
#include "tmgen/packing.hpp"
#include "tmgen/pipeline.hpp"

namespace {

using namespace tmgen;

struct PreparedRun {
  RunConfig config;
  GenerateResult generated;  // flows/targets/pairs reused across iterations
};

const PreparedRun& prepared(std::size_t num_nodes) {
  static std::map<std::size_t, PreparedRun> cache;
  auto it = cache.find(num_nodes);
  if (it == cache.end()) {
    BenchPlan plan = default_bench_plan();
    PreparedRun run;
    run.config = bench_run_config(plan, num_nodes, 1, PackerKind::vectorised);
    run.generated = run_generate(run.config);
    it = cache.emplace(num_nodes, std::move(run)).first;
  }
  return it->second;
}

void BM_PackVectorised(benchmark::State& state) {
  const PreparedRun& run = prepared(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Rng rng(run.config.seed, RngStream::packing);
    benchmark::DoNotOptimize(pack_vectorised(
        run.generated.flows, run.generated.targets, run.config.topology,
        run.generated.pairs, rng, run.config.fixed_point_scale));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(run.generated.flows.sizes.size()));
}
BENCHMARK(BM_PackVectorised)->Arg(8)->Arg(16)->Arg(32)->Arg(64)
    ->Unit(benchmark::kMillisecond);

void BM_PackOriginal(benchmark::State& state) {
  const PreparedRun& run = prepared(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Rng rng(run.config.seed, RngStream::packing);
    benchmark::DoNotOptimize(pack_original(
        run.generated.flows, run.generated.targets, run.config.topology,
        run.generated.pairs, rng, run.config.fixed_point_scale));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(run.generated.flows.sizes.size()));
}
BENCHMARK(BM_PackOriginal)->Arg(8)->Arg(16)->Arg(32)
    ->Unit(benchmark::kMillisecond);

void BM_PairMask(benchmark::State& state) {
  const PreparedRun& run = prepared(static_cast<std::size_t>(state.range(0)));
  const PackingState packing = init_packing_state(
      run.config.topology, run.generated.pairs, run.generated.flows.duration,
      run.config.fixed_point_scale);
  const InfoUnits size = run.generated.flows.sizes.front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_mask(packing, size));
  }
}
BENCHMARK(BM_PairMask)->Arg(16)->Arg(64);

void BM_SelectPair(benchmark::State& state) {
  const PreparedRun& run = prepared(static_cast<std::size_t>(state.range(0)));
  const auto& targets = run.generated.targets.target_info;
  std::vector<InfoUnits> target_units(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    target_units[i] = to_info_units(targets[i], run.config.fixed_point_scale);
  }
  const std::vector<InfoUnits> actuals(targets.size(), 0);
  const std::vector<std::uint8_t> mask(targets.size(), 1);
  Rng rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_pair(target_units, actuals, mask, rng));
  }
}
BENCHMARK(BM_SelectPair)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
