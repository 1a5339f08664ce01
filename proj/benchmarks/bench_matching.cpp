#include <benchmark/benchmark.h>

#include "permsim/geometry.hpp"
#include "permsim/matching.hpp"

namespace {

using namespace permsim;

void BM_Bottleneck(benchmark::State& state, MatchingMode mode) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SamplerConfig sc;
  sc.seed = 1;
  const auto red = sample_cloud(n, sc, 0), blue = sample_cloud(n, sc, 1);
  for (auto _ : state) benchmark::DoNotOptimize(bottleneck_matching(red, blue, mode).bottleneck);
  state.SetComplexityN(state.range(0));
}

void BM_ThresholdMatching(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SamplerConfig sc;
  sc.seed = 2;
  const auto red = sample_cloud(n, sc, 0), blue = sample_cloud(n, sc, 1);
  const double t = 2 * doubling_start_threshold(n);
  for (auto _ : state) benchmark::DoNotOptimize(max_matching_under_threshold(red, blue, t).cardinality);
}

BENCHMARK_CAPTURE(BM_Bottleneck, exact, MatchingMode::exact)
    ->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Bottleneck, doubling, MatchingMode::threshold_doubling)
    ->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThresholdMatching)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);

}  // namespace
