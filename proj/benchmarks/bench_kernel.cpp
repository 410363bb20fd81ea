#include "amalgam/kernel.hpp"

#include <benchmark/benchmark.h>

using namespace amalgam;

static void BM_KernelValue(benchmark::State& state) {
    double x = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(propagator::kernel_value(1, 0.3, 0.5, x));
}
BENCHMARK(BM_KernelValue)->Arg(0)->Arg(2)->Arg(20);

static void BM_KernelLattice(benchmark::State& state) {
    propagator::KernelSchedule s;
    s.method = propagator::KernelMethod::regularized_lattice;
    for (auto _ : state) benchmark::DoNotOptimize(propagator::kernel_value(1, 0.3, 0.05, 0.4, s));
}
BENCHMARK(BM_KernelLattice);

static void BM_KernelOnGrid(benchmark::State& state) {
    auto g = grid::make_grid(1, 64.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto K = propagator::kernel_on_grid(g, 0.3, 1.0);
        benchmark::DoNotOptimize(K.values.data());
    }
}
BENCHMARK(BM_KernelOnGrid)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
