#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "sqa/dynamics.hpp"

using namespace sqa;

namespace {

// f = h with no reachable spike; usable at n < 4.
SpikeProblem plain_weight(int n) { return SpikeProblem{n, -1, 0.0}; }

int lattice_code(const WorldlineLattice& lat) {
    int code = 0, bit = 0;
    for (int i = 0; i < lat.num_slices(); ++i)
        for (int j = 0; j < lat.n(); ++j, ++bit)
            if (lat.spin(i, j) == -1) code |= 1 << bit;
    return code;
}

WorldlineLattice lattice_from_code(int n, int L, int code) {
    WorldlineLattice lat(n, L);
    int bit = 0;
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < n; ++j, ++bit)
            if (code & (1 << bit)) lat.apply_flip(i, j);
    return lat;
}

std::vector<double> boltzmann_enumeration(const SpikeProblem& problem,
                                          const PimcParams& params, int n, int L) {
    const int states = 1 << (n * L);
    std::vector<double> pi(states);
    double z = 0.0;
    for (int c = 0; c < states; ++c) {
        pi[c] = std::exp(-effective_energy(problem, lattice_from_code(n, L, c), params));
        z += pi[c];
    }
    for (auto& p : pi) p /= z;
    return pi;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    double tv = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) tv += std::abs(a[i] - b[i]);
    return tv / 2.0;
}

}  // namespace

TEST_CASE("metropolis rule: boundary cases and variate consumption") {
    RngStream rng(1, 0);
    for (int t = 0; t < 100; ++t) {
        CHECK(metropolis_accept(0.0, rng));
        CHECK(metropolis_accept(-3.2, rng));
    }
    // No variate is consumed on a downhill accept.
    RngStream a(9, 9), b(9, 9);
    metropolis_accept(-1.0, a);
    metropolis_accept(0.0, a);
    CHECK(a.next_u64() == b.next_u64());
    CHECK_THROWS(metropolis_accept(std::nan(""), rng));
}

TEST_CASE("metropolis rule: empirical acceptance at delta = 0.75") {
    RngStream rng(2, 0);
    const int trials = 1000000;
    int accepted = 0;
    for (int t = 0; t < trials; ++t)
        if (metropolis_accept(0.75, rng)) ++accepted;
    const double rate = static_cast<double>(accepted) / trials;
    CHECK(std::abs(rate - std::exp(-0.75)) < 0.002);
}

TEST_CASE("sweep: frozen at huge J, free at tiny J") {
    const auto problem = SpikeProblem::spiked(16);
    // Final schedule value: J ~ 12, any flip costs >= 4J.
    const auto cold = PimcParams::make(32, 8.27e-13, 64);
    WorldlineLattice lat(16, 64);
    MetropolisSweeper sweeper(problem, cold);
    RngStream rng(3, 0);
    for (int s = 0; s < 100; ++s) CHECK(sweeper.sweep(lat, rng).accepted == 0);

    // J ~ 0 and beta/L ~ 0: everything accepted.
    const auto hot = PimcParams::make(0.001, 1e7, 64);
    MetropolisSweeper free_sweeper(problem, hot);
    auto rnd = WorldlineLattice::random(16, 64, rng);
    const auto report = free_sweeper.sweep(rnd, rng);
    CHECK(static_cast<double>(report.accepted) / report.attempted > 0.999);
}

TEST_CASE("sweep report: energy tracking and accepted counts") {
    const auto problem = SpikeProblem::spiked(8);
    const auto params = PimcParams::make(4, 0.7, 8);
    RngStream rng(4, 0);
    auto lat = WorldlineLattice::random(8, 8, rng);
    MetropolisSweeper sweeper(problem, params);
    for (int s = 0; s < 20; ++s) {
        const auto before = lat;
        const double energy = effective_energy(problem, lat, params);
        const auto report = sweeper.sweep(lat, rng, energy);
        CHECK(report.attempted == 64);
        CHECK(report.final_energy ==
              doctest::Approx(effective_energy(problem, lat, params)).epsilon(1e-9));
        int changed = 0;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                if (before.spin(i, j) != lat.spin(i, j)) ++changed;
        CHECK(report.accepted == changed);
    }
}

TEST_CASE("random-site kernel satisfies detailed balance exactly") {
    const auto problem = plain_weight(2);
    const auto params = PimcParams::make(1.5, 0.8, 2);
    const auto pi = boltzmann_enumeration(problem, params, 2, 2);
    // One random-site proposal: P(a,b) = (1/4) min{1, e^{-(E(b)-E(a))}}
    // for single-flip neighbors.
    for (int a = 0; a < 16; ++a) {
        const double ea =
            effective_energy(problem, lattice_from_code(2, 2, a), params);
        for (int bit = 0; bit < 4; ++bit) {
            const int b = a ^ (1 << bit);
            const double eb =
                effective_energy(problem, lattice_from_code(2, 2, b), params);
            const double p_ab = 0.25 * std::min(1.0, std::exp(-(eb - ea)));
            const double p_ba = 0.25 * std::min(1.0, std::exp(-(ea - eb)));
            CHECK(pi[a] * p_ab == doctest::Approx(pi[b] * p_ba).epsilon(1e-12));
        }
    }
}

TEST_CASE("systematic sweeps are stationary for pi (n=2, L=2)") {
    const auto problem = plain_weight(2);
    const auto params = PimcParams::make(1.0, 1.0, 2);
    const auto pi = boltzmann_enumeration(problem, params, 2, 2);
    MetropolisSweeper sweeper(problem, params);
    RngStream rng(5, 0);
    WorldlineLattice lat(2, 2);
    std::vector<double> counts(16, 0.0);
    const int burnin = 1000, samples = 1000000;
    for (int t = 0; t < burnin + samples; ++t) {
        sweeper.sweep(lat, rng);
        if (t >= burnin) counts[lattice_code(lat)] += 1.0;
    }
    for (auto& c : counts) c /= samples;
    CHECK(total_variation(counts, pi) < 0.02);
}

TEST_CASE("worldline resample matches the exhaustive conditional") {
    // Columns 1..3 frozen all-zero; column 0 redrawn. The conditional is
    // enumerated over all 2^L column states from the full energy.
    const auto problem = SpikeProblem::spiked(4);
    const int L = 4;
    const auto params = PimcParams::make(2.0, 0.6, L);
    std::vector<double> exact(1 << L);
    double z = 0.0;
    for (int c = 0; c < (1 << L); ++c) {
        WorldlineLattice lat(4, L);
        for (int i = 0; i < L; ++i)
            if (c & (1 << i)) lat.apply_flip(i, 0);
        exact[c] = std::exp(-effective_energy(problem, lat, params));
        z += exact[c];
    }
    for (auto& e : exact) e /= z;

    RngStream rng(6, 0);
    WorldlineLattice lat(4, L);
    std::vector<double> counts(1 << L, 0.0);
    const int samples = 100000;
    for (int t = 0; t < samples; ++t) {
        worldline_resample(problem, lat, params, 0, rng);
        int c = 0;
        for (int i = 0; i < L; ++i)
            if (lat.spin(i, 0) == -1) c |= 1 << i;
        counts[c] += 1.0;
        // Frozen columns stay bit-exact.
        for (int i = 0; i < L; ++i)
            for (int j = 1; j < 4; ++j) REQUIRE(lat.spin(i, j) == 1);
    }
    for (auto& c : counts) c /= samples;
    CHECK(total_variation(counts, exact) < 0.02);
}

TEST_CASE("worldline resample: factorized limit at J ~ 0") {
    // x = beta*gamma/L = 50 makes J ~ e^{-100}; sites decouple and each
    // follows the closed-form two-state marginal.
    const auto problem = SpikeProblem::spiked(4);
    const int L = 8;
    const auto params = PimcParams::make(4.0, 100.0, L);
    REQUIRE(params.coupling_J < 1e-15);
    const double w = params.beta / L;
    RngStream rng(7, 0);
    WorldlineLattice lat(4, L);  // other columns all +1: h moves 0 -> 1
    const double f0 = objective_by_weight(problem, 0);
    const double f1 = objective_by_weight(problem, 1);
    const double p_minus =
        std::exp(-w * f1) / (std::exp(-w * f0) + std::exp(-w * f1));
    std::vector<double> minus_count(L, 0.0);
    const int samples = 100000;
    for (int t = 0; t < samples; ++t) {
        worldline_resample(problem, lat, params, 2, rng);
        for (int i = 0; i < L; ++i)
            if (lat.spin(i, 2) == -1) minus_count[i] += 1.0;
    }
    for (int i = 0; i < L; ++i)
        CHECK(std::abs(minus_count[i] / samples - p_minus) < 0.01);
}

TEST_CASE("worldline resample changes each slice weight by at most one") {
    const auto problem = SpikeProblem::spiked(8);
    const auto params = PimcParams::make(8.0, 0.3, 16);
    RngStream rng(8, 0);
    auto lat = WorldlineLattice::random(8, 16, rng);
    for (int t = 0; t < 200; ++t) {
        const auto before = lat.slice_weights();
        const int qubit = static_cast<int>(rng.next_below(8));
        worldline_resample(problem, lat, params, qubit, rng);
        for (int i = 0; i < 16; ++i)
            CHECK(std::abs(lat.slice_weight(i) - before[i]) <= 1);
    }
    CHECK_THROWS(worldline_resample(problem, lat, params, 8, rng));
}

TEST_CASE("rng streams are reproducible and distinct") {
    RngStream a(123, 7), b(123, 7), c(123, 8);
    bool identical = true, differs = false;
    for (int t = 0; t < 1000; ++t) {
        const auto x = a.next_u64();
        identical = identical && (x == b.next_u64());
        differs = differs || (x != c.next_u64());
    }
    CHECK(identical);
    CHECK(differs);
}
