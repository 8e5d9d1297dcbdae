#include <benchmark/benchmark.h>

#include <cmath>

#include "netvuln/pa_graph.hpp"

namespace {

using namespace netvuln;

void BM_Generate(benchmark::State& state) {
    const auto rule = AttachmentRule::affine(0.5, 1.0);
    const auto n = static_cast<Vertex>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto g = generate(rule, n, seed++);
        benchmark::DoNotOptimize(g.edges.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Generate)->Arg(10000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_GenerateSqrtRule(benchmark::State& state) {
    const auto rule = AttachmentRule::c_class_from(
        [](std::uint64_t k) {
            return 0.5 * static_cast<double>(k) + std::sqrt(static_cast<double>(k) + 1.0);
        },
        0.5, 1 << 16);
    const auto n = static_cast<Vertex>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto g = generate(rule, n, seed++);
        benchmark::DoNotOptimize(g.edges.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GenerateSqrtRule)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_CoupledGenerate(benchmark::State& state) {
    const auto lower = AttachmentRule::affine(0.5, 0.5);
    const auto upper = AttachmentRule::affine(0.5, 1.5);
    const auto n = static_cast<Vertex>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto graphs = coupled_generate({lower, upper}, n, seed++);
        benchmark::DoNotOptimize(graphs.data());
    }
}
BENCHMARK(BM_CoupledGenerate)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Percolate(benchmark::State& state) {
    const auto rule = AttachmentRule::affine(0.5, 1.0);
    const auto g = generate(rule, static_cast<Vertex>(state.range(0)), 7);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto mask = percolate(g, 0.5, seed++);
        benchmark::DoNotOptimize(mask.alive.data());
    }
}
BENCHMARK(BM_Percolate)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
