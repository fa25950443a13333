#include <benchmark/benchmark.h>

#include "genus_atsp/harness.hpp"
#include "genus_atsp/held_karp.hpp"
#include "genus_atsp/ribbons.hpp"
#include "genus_atsp/tour.hpp"

namespace {

using namespace genus_atsp;

EmbeddedDigraph instance(int n, std::uint64_t seed) {
    GenSpec spec;
    spec.n = n;
    spec.seed = seed;
    spec.mode = seed % 2 ? GenusMode::Planar : GenusMode::Crosscaps;
    spec.crosscaps = 2;
    return generate(spec);
}

void BM_FaceTrace(benchmark::State& state) {
    const EmbeddedDigraph g = instance(static_cast<int>(state.range(0)), 11);
    for (auto _ : state)
        benchmark::DoNotOptimize(trace_faces(g.embedding()).face_count());
}
BENCHMARK(BM_FaceTrace)->Arg(16)->Arg(32)->Arg(64);

void BM_HeldKarp(benchmark::State& state) {
    const EmbeddedDigraph g =
        normalize_metric(instance(static_cast<int>(state.range(0)), 5));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_held_karp(g).objective);
}
BENCHMARK(BM_HeldKarp)->Arg(10)->Arg(20)->Arg(30);

void BM_ContractionSequence(benchmark::State& state) {
    const EmbeddedDigraph g =
        normalize_metric(instance(static_cast<int>(state.range(0)), 5));
    const LpSolution lp = solve_held_karp(g);
    const SymWeights z = symmetrize(g, lp.x);
    const int eg = euler_genus(g.embedding());
    for (auto _ : state) {
        auto [trace, forest] = contraction_sequence(g.embedding(), z.z, eg);
        benchmark::DoNotOptimize(forest.components);
        benchmark::DoNotOptimize(trace.final_vertices);
    }
}
BENCHMARK(BM_ContractionSequence)->Arg(10)->Arg(20)->Arg(30);

void BM_SolveEndToEnd(benchmark::State& state) {
    const EmbeddedDigraph g = instance(static_cast<int>(state.range(0)), 9);
    SolveOptions opt;
    opt.thin.audit = AuditMode::Off;
    for (auto _ : state) benchmark::DoNotOptimize(solve(g, opt).tour.cost);
}
BENCHMARK(BM_SolveEndToEnd)->Arg(8)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
