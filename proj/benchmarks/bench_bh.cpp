#include <benchmark/benchmark.h>

#include "netlay/bh_tree.hpp"
#include "netlay/rng.hpp"

using namespace netlay;

namespace {

std::vector<Vec3> random_bodies(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Vec3> x(n);
    for (auto& p : x)
        for (int k = 0; k < 3; ++k) p[k] = rng.uniform(-0.5, 0.5);
    return x;
}

} // namespace

static void BM_TreeBuild(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto x = random_bodies(n, 1);
    std::vector<double> q(n, 1.0);
    for (auto _ : state) {
        auto tree = BhTree<3>::build(x, q);
        benchmark::DoNotOptimize(tree.total_charge());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TreeBuild)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

static void BM_TreeForceSweep(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto x = random_bodies(n, 2);
    std::vector<double> q(n, 1.0);
    auto tree = BhTree<3>::build(x, q);
    for (auto _ : state) {
        Vec3 acc{};
        for (std::uint32_t i = 0; i < n; ++i) acc += tree.force_on(i, 0.5, 1.0, x, q, 1e-4);
        benchmark::DoNotOptimize(acc);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TreeForceSweep)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

static void BM_DirectForceSweep(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto x = random_bodies(n, 3);
    std::vector<double> q(n, 1.0);
    for (auto _ : state) {
        Vec3 acc{};
        for (std::uint32_t i = 0; i < n; ++i) acc += direct_coulomb<3>(i, 1.0, x, q, 1e-4);
        benchmark::DoNotOptimize(acc);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DirectForceSweep)->RangeMultiplier(4)->Range(1024, 16384)->Complexity();

BENCHMARK_MAIN();
