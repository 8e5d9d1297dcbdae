#include <benchmark/benchmark.h>

#include "netvuln/components.hpp"
#include "netvuln/pa_graph.hpp"

namespace {

using namespace netvuln;

void BM_LargestComponent(benchmark::State& state) {
    const auto rule = AttachmentRule::affine(0.5, 1.0);
    const auto n = static_cast<Vertex>(state.range(0));
    const auto g = generate(rule, n, 3);
    const auto mask = percolate(damage(g, 0.05), 0.5, 9);
    for (auto _ : state) {
        auto summary = largest_component(g, mask);
        benchmark::DoNotOptimize(summary.largest);
    }
    state.SetItemsProcessed(state.iterations() * g.edges.size());
}
BENCHMARK(BM_LargestComponent)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_SampleDistances(benchmark::State& state) {
    const auto rule = AttachmentRule::affine(0.5, 1.0);
    const auto g = generate(rule, 100000, 3);
    const auto mask = damage(g, 0.05);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto samples = sample_distances(g, mask, static_cast<std::uint32_t>(state.range(0)),
                                        seed++);
        benchmark::DoNotOptimize(samples.data());
    }
}
BENCHMARK(BM_SampleDistances)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
