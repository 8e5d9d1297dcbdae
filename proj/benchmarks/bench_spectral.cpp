#include <benchmark/benchmark.h>

#include "netvuln/spectral.hpp"

namespace {

using namespace netvuln::spectral;

void BM_Assemble(benchmark::State& state) {
    const auto n_cells = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
        auto grid = assemble(0.01, 0.75, 1.0, n_cells);
        benchmark::DoNotOptimize(grid.kernel.data());
    }
}
BENCHMARK(BM_Assemble)->Arg(256)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_PowerIteration(benchmark::State& state) {
    const auto n_cells = static_cast<std::uint32_t>(state.range(0));
    const auto grid = assemble(0.01, 0.75, 1.0, n_cells);
    for (auto _ : state) {
        auto result = spectral_radius(grid);
        benchmark::DoNotOptimize(result.rho);
    }
}
BENCHMARK(BM_PowerIteration)->Arg(256)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_PcSpectral(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(pc_spectral(0.01, 0.75, 1.0));
    }
}
BENCHMARK(BM_PcSpectral)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
