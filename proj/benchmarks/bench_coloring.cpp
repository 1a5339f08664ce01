#include <benchmark/benchmark.h>

#include <random>

#include "permsim/coloring.hpp"

namespace {

using namespace permsim;

Multigraph random_graph(std::size_t side, std::size_t edges, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Multigraph g{2 * side, {}};
  for (std::size_t e = 0; e < edges; ++e) g.edges.emplace_back(gen() % side, side + gen() % side);
  return g;
}

void BM_EdgeColor(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto g = random_graph(side, static_cast<std::size_t>(state.range(1)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(edge_color(g).num_colors);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

BENCHMARK(BM_EdgeColor)
    ->Args({64, 1000})
    ->Args({256, 10000})
    ->Args({1024, 100000})
    ->Args({32, 10000})
    ->Unit(benchmark::kMillisecond);

}  // namespace
