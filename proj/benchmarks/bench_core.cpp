#include <benchmark/benchmark.h>

#include "torusflux/invariants.hpp"
#include "torusflux/orbits.hpp"
#include "torusflux/perturb.hpp"
#include "torusflux/rng.hpp"

using namespace torusflux;

namespace {

TorusMap make_chain(int depth) {
    Rng rng(99);
    return random_chain(rng, depth);
}

void BM_LiftChain(benchmark::State& state) {
    const TorusMap f = make_chain(static_cast<int>(state.range(0)));
    Vec2 p{0.123, 0.456};
    for (auto _ : state) {
        p = project(f.lift(p));
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_LiftChain)->Arg(1)->Arg(10)->Arg(40);

void BM_JacobianChain(benchmark::State& state) {
    const TorusMap f = make_chain(static_cast<int>(state.range(0)));
    const Vec2 p{0.123, 0.456};
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.jacobian(p));
    }
}
BENCHMARK(BM_JacobianChain)->Arg(1)->Arg(10)->Arg(40);

void BM_FluxVector(benchmark::State& state) {
    const TorusMap f = make_chain(10);
    const GridSpec grid{static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(flux_vector(f, grid));
    }
}
BENCHMARK(BM_FluxVector)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_ActionProfile(benchmark::State& state) {
    const Disk d{{0.5, 0.5}, 0.3};
    const TorusMap twist(Generator{DiskTwist{d.center, d.radius, 1.0}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(action_profile(twist, d).total);
    }
}
BENCHMARK(BM_ActionProfile)->Unit(benchmark::kMillisecond);

void BM_FindPeriodicPoints(benchmark::State& state) {
    const TorusMap f = compose(TorusMap(Generator{HorizontalShear{0.2, {0.3, 0.7}}}),
                               TorusMap(Generator{Translation{1.0 / 3.0, 0.0}}));
    FindOptions fo;
    fo.seeds_per_axis = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_periodic_points(f, 3, Region::full(), fo));
    }
}
BENCHMARK(BM_FindPeriodicPoints)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ClosingScanTrivial(benchmark::State& state) {
    const TorusMap f(Generator{Translation{1.0 / 3.0, 0.0}});
    ScanOptions so;
    so.seeds_per_axis = 12;
    for (auto _ : state) {
        benchmark::DoNotOptimize(closing_scan(f, Disk{{0.5, 0.5}, 0.05}, so).status);
    }
}
BENCHMARK(BM_ClosingScanTrivial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
