#include "ensys/generators.hpp"
#include "ensys/solver.hpp"

#include <benchmark/benchmark.h>

using namespace ensys;

namespace {

void BM_CountTheorem2(benchmark::State& state) {
    const auto n = static_cast<VarIndex>(state.range(0));
    Generated g = gen_theorem2(n, theorem2_min_m(n));
    for (auto _ : state) benchmark::DoNotOptimize(count_solutions(g.system, *g.recommended_box));
}
BENCHMARK(BM_CountTheorem2)->Arg(5)->Arg(9)->Arg(17)->Arg(33);

void BM_CountTheorem3(benchmark::State& state) {
    const auto n = static_cast<VarIndex>(state.range(0));
    Generated g = gen_theorem3(n, theorem3_min_m(n));
    for (auto _ : state) benchmark::DoNotOptimize(count_solutions(g.system, *g.recommended_box));
}
BENCHMARK(BM_CountTheorem3)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CountObservation(benchmark::State& state) {
    const auto n = static_cast<VarIndex>(state.range(0));
    Generated g = gen_observation(n);
    for (auto _ : state) benchmark::DoNotOptimize(count_solutions(g.system, *g.recommended_box));
}
BENCHMARK(BM_CountObservation)->DenseRange(2, 6);

void BM_CountThreads(benchmark::State& state) {
    Generated g = gen_theorem2(17, theorem2_min_m(17));
    SolveOptions options;
    options.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(count_solutions(g.system, *g.recommended_box, options));
}
BENCHMARK(BM_CountThreads)->Arg(1)->Arg(2)->Arg(4);

}  // namespace
