#include <benchmark/benchmark.h>

#include "sqa/oracle.hpp"

namespace {

void BM_SymmetricLowestTwo(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto problem = sqa::SpikeProblem::spiked(n);
    for (auto _ : state) {
        auto gap = sqa::symmetric_lowest_two(problem, 0.5);
        benchmark::DoNotOptimize(gap.first);
    }
}

}  // namespace

BENCHMARK(BM_SymmetricLowestTwo)->Arg(256)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
