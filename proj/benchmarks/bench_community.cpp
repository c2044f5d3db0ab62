#include <benchmark/benchmark.h>

#include "netlay/community.hpp"
#include "netlay/gen.hpp"

using namespace netlay;

static void BM_GreedyModularity(benchmark::State& state) {
    auto blocks = static_cast<std::uint32_t>(state.range(0));
    auto gen = gen_planted_partition(blocks, 64, 0.2, 0.005, 11);
    Graph g = gen.to_graph();
    for (auto _ : state) {
        auto res = greedy_modularity(g);
        benchmark::DoNotOptimize(res.best_q);
    }
    state.SetLabel("N=" + std::to_string(g.node_count()) + " M=" +
                   std::to_string(g.edge_count()));
    state.SetComplexityN(g.node_count());
}
BENCHMARK(BM_GreedyModularity)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void BM_ModularityScratch(benchmark::State& state) {
    auto gen = gen_planted_partition(16, 64, 0.2, 0.005, 12);
    Graph g = gen.to_graph();
    auto part = greedy_modularity(g).partition;
    for (auto _ : state) benchmark::DoNotOptimize(modularity(g, part));
}
BENCHMARK(BM_ModularityScratch);

BENCHMARK_MAIN();
