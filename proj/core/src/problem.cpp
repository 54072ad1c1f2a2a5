#include "sqa/problem.hpp"

namespace sqa {

static void check_n(int n) {
    if (n < 4 || n % 4 != 0)
        throw std::invalid_argument("SpikeProblem: n must be >= 4 and divisible by 4");
}

SpikeProblem SpikeProblem::spiked(int n) {
    check_n(n);
    return SpikeProblem{n, n / 4, static_cast<double>(n)};
}

SpikeProblem SpikeProblem::spikeless(int n) {
    check_n(n);
    return SpikeProblem{n, n / 4, static_cast<double>(n) / 4.0};
}

int hamming_weight(const SpinSlice& slice) {
    int sum = 0;
    for (Spin s : slice) sum += s;
    return (static_cast<int>(slice.size()) - sum) / 2;
}

double evaluate_objective(const SpikeProblem& problem, const SpinSlice& slice) {
    if (static_cast<int>(slice.size()) != problem.n)
        throw std::invalid_argument("evaluate_objective: slice length != n");
    return objective_by_weight(problem, hamming_weight(slice));
}

double objective_by_weight(const SpikeProblem& problem, int h) {
    if (h < 0 || h > problem.n)
        throw std::out_of_range("objective_by_weight: h out of [0, n]");
    if (h == problem.spike_location) return problem.spike_height;
    return static_cast<double>(h);
}

}  // namespace sqa
