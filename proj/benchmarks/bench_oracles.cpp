#include "ensys/generators.hpp"
#include "ensys/oracles.hpp"

#include <benchmark/benchmark.h>

using namespace ensys;

namespace {

void BM_SturmLemma2(benchmark::State& state) {
    const auto k = static_cast<unsigned>(state.range(0));
    const Polynomial q = Polynomial::constant(1, {"x"}) - Polynomial::constant(2, {"x"}) * chebyshev_P(k);
    for (auto _ : state) benchmark::DoNotOptimize(sturm_root_count(q, std::nullopt, std::nullopt));
}
BENCHMARK(BM_SturmLemma2)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_R4(benchmark::State& state) {
    const auto k = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(r4_bruteforce(k));
}
BENCHMARK(BM_R4)->Arg(100)->Arg(1000)->Arg(10000);

void BM_TwoSquares(benchmark::State& state) {
    const auto n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(count_two_squares(n));
}
BENCHMARK(BM_TwoSquares)->DenseRange(1, 6);

}  // namespace
