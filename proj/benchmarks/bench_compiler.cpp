#include "ensys/compiler.hpp"
#include "ensys/normalize.hpp"
#include "ensys/parser.hpp"

#include <benchmark/benchmark.h>
#include <string>

using namespace ensys;

namespace {

// (x+y+1)^k - z, a dense input whose size grows with k.
std::string dense_input(int k) { return "(x+y+1)^" + std::to_string(k) + " - z"; }

void BM_Flatten(benchmark::State& state) {
    const NormalizedPair pair = split_nonneg(parse_polynomial(dense_input(static_cast<int>(state.range(0)))));
    for (auto _ : state) benchmark::DoNotOptimize(flatten(pair));
}
BENCHMARK(BM_Flatten)->DenseRange(1, 6);

// |T| grows too fast for dense inputs; x^k - y keeps it small.
void BM_Lemma1(benchmark::State& state) {
    const NormalizedPair pair = split_nonneg(parse_polynomial("x^" + std::to_string(state.range(0)) + " - y"));
    for (auto _ : state) benchmark::DoNotOptimize(lemma1_system(pair));
}
BENCHMARK(BM_Lemma1)->DenseRange(1, 4);

void BM_Parse(benchmark::State& state) {
    const std::string text = dense_input(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(parse_polynomial(text));
}
BENCHMARK(BM_Parse)->Arg(2)->Arg(8);

}  // namespace
