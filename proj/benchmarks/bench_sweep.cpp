#include <benchmark/benchmark.h>

#include "sqa/dynamics.hpp"

namespace {

void BM_SystematicSweep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int L = 8 * n;
    const auto problem = sqa::SpikeProblem::spiked(n);
    const auto params = sqa::PimcParams::make(8.0, 0.1, L);
    sqa::MetropolisSweeper sweeper(problem, params);
    sqa::RngStream rng(42, 0);
    auto lattice = sqa::WorldlineLattice::random(n, L, rng);
    for (auto _ : state) {
        auto report = sweeper.sweep(lattice, rng);
        benchmark::DoNotOptimize(report.accepted);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n) * L);
}

void BM_WorldlineResample(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int L = 8 * n;
    const auto problem = sqa::SpikeProblem::spiked(n);
    const auto params = sqa::PimcParams::make(8.0, 0.1, L);
    sqa::RngStream rng(42, 0);
    auto lattice = sqa::WorldlineLattice::random(n, L, rng);
    int qubit = 0;
    for (auto _ : state) {
        sqa::worldline_resample(problem, lattice, params, qubit, rng);
        qubit = (qubit + 1) % n;
    }
    state.SetItemsProcessed(state.iterations() * L);
}

}  // namespace

BENCHMARK(BM_SystematicSweep)->Arg(16)->Arg(64)->Arg(128);
BENCHMARK(BM_WorldlineResample)->Arg(16)->Arg(64);
