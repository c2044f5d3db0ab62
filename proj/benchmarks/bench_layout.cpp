#include <benchmark/benchmark.h>

#include "netlay/gen.hpp"
#include "netlay/layout.hpp"

using namespace netlay;

static void BM_RelaxStep(benchmark::State& state) {
    auto n = static_cast<std::uint32_t>(state.range(0));
    auto gen = gen_ring_with_trees(n / 3, n - n / 3, 5);
    Graph g = gen.to_graph();
    SimParams p;
    BodyState<3> s = BodyState<3>::from_positions(random_init<3>(g.node_count(), 1.0, 2), p);
    p.softening = resolved_softening<3>(p, s.x);
    for (auto _ : state) {
        step<3>(s, g, p);
        benchmark::DoNotOptimize(s.x[0]);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RelaxStep)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

BENCHMARK_MAIN();
