// Timing of the hot paths: grid solves, transition matrices and the Kepler inverse.

#include <benchmark/benchmark.h>

#include <numbers>

#include "rdv/kepler.hpp"
#include "rdv/postprocess.hpp"
#include "rdv/relative_dynamics.hpp"
#include "rdv/scenarios.hpp"

namespace {

void solve_on_grid(benchmark::State& state, const char* name, rdv::Formulation form) {
    const rdv::Scenario s = rdv::builtin(name);
    rdv::SolveOptions o;
    o.mesh_M = static_cast<int>(state.range(0));
    o.form = form;
    for (auto _ : state) {
        rdv::RendezvousResult r = rdv::solve_rendezvous(s, o);
        benchmark::DoNotOptimize(r.plan.total_dv);
    }
    state.SetComplexityN(state.range(0));
}

void BM_Circle2CircleCondensed(benchmark::State& state) {
    solve_on_grid(state, "circle2circle", rdv::Formulation::condensed);
}
BENCHMARK(BM_Circle2CircleCondensed)->RangeMultiplier(2)->Range(16, 256)->Complexity()->Unit(benchmark::kMillisecond);

void BM_Circle2CircleFull(benchmark::State& state) {
    solve_on_grid(state, "circle2circle", rdv::Formulation::full);
}
BENCHMARK(BM_Circle2CircleFull)->RangeMultiplier(2)->Range(16, 128)->Complexity()->Unit(benchmark::kMillisecond);

void BM_AtvCondensed(benchmark::State& state) {
    solve_on_grid(state, "atv", rdv::Formulation::condensed);
}
BENCHMARK(BM_AtvCondensed)->Arg(257)->Unit(benchmark::kMillisecond);

void BM_InnerNodeSearch(benchmark::State& state) {
    const rdv::Scenario s = rdv::builtin("atv");
    for (auto _ : state) {
        benchmark::DoNotOptimize(rdv::inner_node_search(s, static_cast<int>(state.range(0))).theta2);
    }
}
BENCHMARK(BM_InnerNodeSearch)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_StmFull(benchmark::State& state) {
    rdv::TargetOrbit o;
    o.e = 0.7988;
    double th = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rdv::stm_full(th + 1.7, th, o));
        th += 1e-3;
    }
}
BENCHMARK(BM_StmFull);

void BM_TrueFromTime(benchmark::State& state) {
    rdv::TargetOrbit o;
    o.e = static_cast<double>(state.range(0)) / 100.0;
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rdv::true_from_time(t, o));
        t += 0.37;
    }
}
BENCHMARK(BM_TrueFromTime)->Arg(0)->Arg(50)->Arg(95);

}  // namespace

BENCHMARK_MAIN();
