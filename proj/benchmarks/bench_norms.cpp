#include "amalgam/generators.hpp"
#include "amalgam/wiener.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace amalgam;

static void BM_AmalgamCube(benchmark::State& state) {
    auto g = grid::make_grid(1, 64.0, static_cast<std::size_t>(state.range(0)));
    verify::Rng rng(3);
    auto f = verify::random_field(g, rng);
    auto w = wiener::cube_partition();
    for (auto _ : state) benchmark::DoNotOptimize(wiener::amalgam_norm(f, 2.0, 4.0, w));
}
BENCHMARK(BM_AmalgamCube)->Arg(1024)->Arg(4096);

static void BM_AmalgamSmooth(benchmark::State& state) {
    auto g = grid::make_grid(1, 64.0, static_cast<std::size_t>(state.range(0)));
    verify::Rng rng(4);
    auto f = verify::random_field(g, rng);
    auto w = wiener::smooth_bump();
    for (auto _ : state) benchmark::DoNotOptimize(wiener::amalgam_norm(f, 2.0, 4.0, w));
}
BENCHMARK(BM_AmalgamSmooth)->Arg(1024)->Arg(4096);

static void BM_WeakLorentz(benchmark::State& state) {
    std::vector<double> seq(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < seq.size(); ++i) seq[i] = 1.0 / static_cast<double>((i * 7919) % seq.size() + 1);
    for (auto _ : state) benchmark::DoNotOptimize(wiener::weak_lorentz_norm(seq, 2.0));
}
BENCHMARK(BM_WeakLorentz)->Arg(1 << 10)->Arg(1 << 16);
