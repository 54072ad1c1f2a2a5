#ifndef SQA_SA_HPP
#define SQA_SA_HPP

#include <cstdint>
#include <vector>

#include "sqa/annealing.hpp"
#include "sqa/problem.hpp"

namespace sqa {

struct SaRunConfig {
    int n;
    std::vector<double> beta_schedule;  // strictly increasing, positive
    std::int64_t sweeps_per_beta;
    std::uint64_t master_seed = 0;
    bool record_weight_trajectory = false;

    // Geometric ladder 0.1 * 1.3^k, clamped to end at 32.
    static std::vector<double> default_beta_schedule(double beta_0 = 0.1,
                                                     double ratio = 1.3,
                                                     double beta_final = 32.0);
    static SaRunConfig defaults(int n, std::int64_t sweeps_per_beta);
};

struct SaTrialResult {
    bool success = false;          // final string is all-zeros
    int final_weight = 0;
    std::int64_t sweeps_total = 0;
    std::uint64_t stream_id = 0;
    std::vector<int> weight_trajectory;  // per accepted move, when recorded
};

// Single-bit-flip Metropolis on f: each sweep proposes n uniformly random
// bit flips accepted with min{1, e^{-beta * df}}; starts from a uniformly
// random string.
SaTrialResult run_sa_trial(const SpikeProblem& problem, const SaRunConfig& config,
                           std::uint64_t stream_id);

struct SaCurvePoint {
    int n;
    double success_rate;
    double ci_halfwidth;
    int trials;
};

std::vector<SaCurvePoint> sa_success_curve(const std::vector<int>& n_values,
                                           const SaRunConfig& config_template,
                                           int trials, std::uint64_t master_seed,
                                           int threads = 1, bool spikeless = false);

// Exact success probability of the full annealing chain. The dynamics
// depend on the state only through its Hamming weight, so the chain
// projects exactly onto an (n+1)-state birth-death chain; this evolves
// the binomial initial distribution through every proposal step.
double sa_exact_success_probability(const SpikeProblem& problem, const SaRunConfig& config);

// Exact weight distribution at the end of the chain (same evolution).
std::vector<double> sa_exact_final_weight_distribution(const SpikeProblem& problem,
                                                       const SaRunConfig& config);

}  // namespace sqa

#endif
