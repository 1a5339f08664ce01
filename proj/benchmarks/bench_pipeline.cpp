#include <benchmark/benchmark.h>

#include "permsim/pipeline.hpp"

namespace {

using namespace permsim;

void BM_DecomposeFresh(benchmark::State& state, std::size_t k) {
  PipelineConfig cfg;
  cfg.k = k;
  cfg.seed = 5;
  cfg.matching_mode = MatchingMode::exact;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(decompose_fresh(n, cfg).record.part_count);
}

void BM_Baseline(benchmark::State& state) {
  const auto perms = random_permutations(static_cast<std::size_t>(state.range(0)), 2, 6);
  for (auto _ : state) benchmark::DoNotOptimize(baseline_decompose(perms).record.part_count);
}

BENCHMARK_CAPTURE(BM_DecomposeFresh, k2, 2)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DecomposeFresh, k3, 3)->RangeMultiplier(4)->Range(1 << 10, 1 << 12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Baseline)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);

}  // namespace
