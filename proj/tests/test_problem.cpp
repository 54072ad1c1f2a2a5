#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "sqa/problem.hpp"
#include "sqa/rng.hpp"

using namespace sqa;

namespace {

SpinSlice slice_of_weight(int n, int h) {
    SpinSlice s(n, Spin{1});
    for (int j = 0; j < h; ++j) s[j] = -1;
    return s;
}

}  // namespace

TEST_CASE("hamming weight counts -1 spins") {
    CHECK(hamming_weight(SpinSlice(8, Spin{1})) == 0);
    CHECK(hamming_weight(SpinSlice(8, Spin{-1})) == 8);
    CHECK(hamming_weight(slice_of_weight(8, 3)) == 3);
}

TEST_CASE("objective: linear in weight except the spike") {
    const auto p8 = SpikeProblem::spiked(8);
    CHECK(evaluate_objective(p8, slice_of_weight(8, 2)) == doctest::Approx(8));
    CHECK(evaluate_objective(p8, slice_of_weight(8, 3)) == doctest::Approx(3));
    CHECK(evaluate_objective(p8, slice_of_weight(8, 0)) == doctest::Approx(0));
    const auto p12 = SpikeProblem::spiked(12);
    CHECK(evaluate_objective(p12, slice_of_weight(12, 3)) == doctest::Approx(12));
}

TEST_CASE("objective rejects bad inputs") {
    const auto p = SpikeProblem::spiked(8);
    CHECK_THROWS(evaluate_objective(p, SpinSlice(4, Spin{1})));
    CHECK_THROWS(objective_by_weight(p, -1));
    CHECK_THROWS(objective_by_weight(p, 9));
    CHECK_THROWS(SpikeProblem::spiked(6));
    CHECK_THROWS(SpikeProblem::spiked(0));
}

TEST_CASE("weight-indexed path agrees with slice evaluation") {
    CHECK(objective_by_weight(SpikeProblem::spiked(8), 2) == doctest::Approx(8));
    CHECK(objective_by_weight(SpikeProblem::spiked(8), 0) == doctest::Approx(0));
    for (int n : {4, 8, 12, 16}) {
        const auto p = SpikeProblem::spiked(n);
        for (int h = 0; h <= n; ++h)
            CHECK(objective_by_weight(p, h) ==
                  doctest::Approx(evaluate_objective(p, slice_of_weight(n, h))));
    }
}

TEST_CASE("unique global minimum at the all-zeros string") {
    for (int n : {4, 8, 12, 16}) {
        const auto p = SpikeProblem::spiked(n);
        // All states of equal weight share a value, so enumerate weights.
        CHECK(objective_by_weight(p, 0) == doctest::Approx(0));
        for (int h = 1; h <= n; ++h) CHECK(objective_by_weight(p, h) > 0);
    }
    // Full enumeration at n = 16.
    const auto p = SpikeProblem::spiked(16);
    int minimizers = 0;
    for (unsigned z = 0; z < (1u << 16); ++z) {
        SpinSlice s(16, Spin{1});
        for (int j = 0; j < 16; ++j)
            if (z & (1u << j)) s[j] = -1;
        if (evaluate_objective(p, s) == 0.0) ++minimizers;
    }
    CHECK(minimizers == 1);
}

TEST_CASE("objective is permutation invariant") {
    const auto p = SpikeProblem::spiked(12);
    RngStream rng(7, 0);
    for (int trial = 0; trial < 50; ++trial) {
        SpinSlice s(12);
        for (auto& x : s) x = (rng.next_u64() & 1) ? Spin{1} : Spin{-1};
        const double value = evaluate_objective(p, s);
        SpinSlice t = s;
        for (int i = 11; i > 0; --i)
            std::swap(t[i], t[rng.next_below(i + 1)]);
        CHECK(evaluate_objective(p, t) == doctest::Approx(value));
    }
}

TEST_CASE("spikeless control reduces to plain Hamming weight") {
    const auto p = SpikeProblem::spikeless(8);
    for (int h = 0; h <= 8; ++h)
        CHECK(objective_by_weight(p, h) == doctest::Approx(h));
}
