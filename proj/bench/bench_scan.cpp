#include <benchmark/benchmark.h>

#include "contour/immersion.hpp"
#include "contour/lift.hpp"
#include "contour/moves.hpp"

using namespace contour;

static void scan_round_sphere(benchmark::State& state, Parallelism par) {
    auto s = builtin_immersion("round-s3", static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(scan(s, par));
    state.counters["samples"] = static_cast<double>(2 * state.range(0) * state.range(0) * state.range(0));
}
BENCHMARK_CAPTURE(scan_round_sphere, serial, Parallelism::Serial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(scan_round_sphere, openmp, Parallelism::OpenMP)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void solve_after_moves(benchmark::State& state) {
    auto d = standard_s3_diagram();
    for (int i = 0; i < state.range(0); ++i) {
        auto sites = enumerate_sites(d, MoveKind::SwallowtailCreate);
        d = apply(d, sites.front());
    }
    for (auto _ : state) benchmark::DoNotOptimize(solve(d));
    state.counters["arcs"] = static_cast<double>(d.arcs.size());
}
BENCHMARK(solve_after_moves)->Arg(1)->Arg(3)->Arg(6);

BENCHMARK_MAIN();
