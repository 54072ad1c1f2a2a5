#ifndef SQA_PROBLEM_HPP
#define SQA_PROBLEM_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sqa {

// Spin values are +1/-1; bit b maps to spin 1-2b, so the all-zeros bit
// string is the all-(+1) spin configuration. This convention is global.
using Spin = std::int8_t;
using SpinSlice = std::vector<Spin>;

// Hamming-symmetric objective: f(z) = h(z) everywhere except at one
// weight, where it takes the value spike_height.
struct SpikeProblem {
    int n;
    int spike_location;
    double spike_height;

    // Paper-mode instance: spike at n/4 with height n. Requires n >= 4
    // and n divisible by 4.
    static SpikeProblem spiked(int n);

    // Barrier-free control: spike_height == spike_location, so f == h.
    static SpikeProblem spikeless(int n);
};

int hamming_weight(const SpinSlice& slice);

double evaluate_objective(const SpikeProblem& problem, const SpinSlice& slice);

// Weight-indexed evaluation; agrees with evaluate_objective on any slice
// of weight h.
double objective_by_weight(const SpikeProblem& problem, int h);

}  // namespace sqa

#endif
