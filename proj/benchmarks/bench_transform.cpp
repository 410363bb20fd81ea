#include "amalgam/generators.hpp"
#include "amalgam/grid.hpp"
#include "amalgam/propagator.hpp"

#include <benchmark/benchmark.h>

using namespace amalgam;

static void BM_Transform1D(benchmark::State& state) {
    auto g = grid::make_grid(1, 64.0, static_cast<std::size_t>(state.range(0)));
    verify::Rng rng(1);
    auto f = verify::random_field(g, rng);
    for (auto _ : state) {
        auto h = grid::transform(f, grid::Direction::forward);
        benchmark::DoNotOptimize(h.values.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Transform1D)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity();

static void BM_Transform2D(benchmark::State& state) {
    auto g = grid::make_grid(2, 16.0, static_cast<std::size_t>(state.range(0)));
    verify::Rng rng(2);
    auto f = verify::random_field(g, rng);
    for (auto _ : state) {
        auto h = grid::transform(f, grid::Direction::forward);
        benchmark::DoNotOptimize(h.values.data());
    }
}
BENCHMARK(BM_Transform2D)->Arg(64)->Arg(256);

static void BM_Evolve(benchmark::State& state) {
    auto g = grid::make_grid(1, 64.0, static_cast<std::size_t>(state.range(0)));
    auto f = verify::gaussian(g);
    for (auto _ : state) {
        auto u = propagator::evolve(f, 0.7, 0.3);
        benchmark::DoNotOptimize(u.values.data());
    }
}
BENCHMARK(BM_Evolve)->Arg(1024)->Arg(4096)->Arg(16384);
