#ifndef SQA_ANNEALING_HPP
#define SQA_ANNEALING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "sqa/dynamics.hpp"
#include "sqa/problem.hpp"

namespace sqa {

// Geometric transverse-field ladder gamma_0, r*gamma_0, ..., ending at the
// first value <= gamma_min. Gamma never reaches 0.
struct AnnealSchedule {
    double gamma_0;
    double ratio;
    double gamma_min;
    std::vector<double> values;
};

AnnealSchedule build_schedule(double gamma_0, double ratio, double gamma_min);

inline AnnealSchedule default_schedule() { return build_schedule(1.0, 0.7, 1e-12); }

struct SqaRunConfig {
    int n;
    int L;
    double beta;
    std::int64_t sweeps_per_gamma;
    AnnealSchedule schedule;
    bool use_worldline = false;
    // Success = every slice is the all-zeros string ("frozen"). The
    // looser criterion accepts a single all-zeros slice.
    bool frozen_success = true;
    std::uint64_t master_seed = 0;

    static SqaRunConfig defaults(int n, double beta = 32.0);
};

struct TrialResult {
    bool success = false;
    std::vector<int> final_weight_profile;
    std::int64_t sweeps_total = 0;
    std::uint64_t stream_id = 0;
};

TrialResult run_sqa_trial(const SpikeProblem& problem, const SqaRunConfig& config,
                          std::uint64_t stream_id);

struct TauEstimate {
    std::int64_t tau_s = 0;           // smallest budget meeting target_rate
    double success_rate = 0.0;        // rate measured at tau_s
    double ci_halfwidth = 0.0;        // binomial 95% halfwidth at tau_s
    bool converged = false;
    std::int64_t cap = 0;
    std::vector<std::pair<std::int64_t, double>> probes;  // (budget, rate)
};

inline constexpr std::int64_t kSweepCap = std::int64_t{1} << 24;

// Doubles sweeps_per_gamma from 1 until the success rate over `trials`
// coupled-seed trials reaches target_rate, then bisects geometrically to
// within a 1.1 multiplicative factor. Trial t always uses stream_id
// trial_stream_base + t, so budgets share randomness.
TauEstimate estimate_tau_s(const SpikeProblem& problem, const SqaRunConfig& config_template,
                           int trials, double target_rate,
                           std::int64_t cap = kSweepCap, int threads = 1,
                           std::uint64_t trial_stream_base = 0);

double binomial_ci_halfwidth(double rate, int trials);

}  // namespace sqa

#endif
