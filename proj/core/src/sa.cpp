#include "sqa/sa.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "sqa/parallel.hpp"
#include "sqa/rng.hpp"

namespace sqa {

std::vector<double> SaRunConfig::default_beta_schedule(double beta_0, double ratio,
                                                       double beta_final) {
    std::vector<double> schedule;
    for (double beta = beta_0; beta < beta_final; beta *= ratio)
        schedule.push_back(beta);
    schedule.push_back(beta_final);
    return schedule;
}

SaRunConfig SaRunConfig::defaults(int n, std::int64_t sweeps_per_beta) {
    return SaRunConfig{n, default_beta_schedule(), sweeps_per_beta};
}

static void validate(const SaRunConfig& config) {
    if (config.sweeps_per_beta < 1)
        throw std::invalid_argument("sa: sweeps_per_beta must be >= 1");
    if (config.beta_schedule.empty())
        throw std::invalid_argument("sa: empty beta schedule");
    double prev = 0.0;
    for (double beta : config.beta_schedule) {
        if (beta <= prev)
            throw std::invalid_argument("sa: beta schedule must be positive increasing");
        prev = beta;
    }
}

SaTrialResult run_sa_trial(const SpikeProblem& problem, const SaRunConfig& config,
                           std::uint64_t stream_id) {
    validate(config);
    const int n = problem.n;
    RngStream rng(config.master_seed, stream_id);
    std::vector<Spin> state(n);
    for (auto& s : state) s = (rng.next_u64() & 1) ? Spin{1} : Spin{-1};
    int h = hamming_weight(state);

    SaTrialResult result;
    result.stream_id = stream_id;
    if (config.record_weight_trajectory) result.weight_trajectory.push_back(h);
    for (double beta : config.beta_schedule) {
        const std::int64_t proposals = config.sweeps_per_beta * n;
        for (std::int64_t t = 0; t < proposals; ++t) {
            const int bit = static_cast<int>(rng.next_below(n));
            const int h_new = (state[bit] == 1) ? h + 1 : h - 1;
            const double df =
                objective_by_weight(problem, h_new) - objective_by_weight(problem, h);
            const double delta = beta * df;
            if (delta <= 0.0 || rng.next_double() < std::exp(-delta)) {
                state[bit] = static_cast<Spin>(-state[bit]);
                h = h_new;
                if (config.record_weight_trajectory)
                    result.weight_trajectory.push_back(h);
            }
        }
        result.sweeps_total += config.sweeps_per_beta;
    }
    result.final_weight = h;
    result.success = (h == 0);
    return result;
}

std::vector<SaCurvePoint> sa_success_curve(const std::vector<int>& n_values,
                                           const SaRunConfig& config_template,
                                           int trials, std::uint64_t master_seed,
                                           int threads, bool spikeless) {
    if (trials < 1) throw std::invalid_argument("sa_success_curve: trials must be >= 1");
    std::vector<SaCurvePoint> curve;
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        const int n = n_values[i];
        const SpikeProblem problem =
            spikeless ? SpikeProblem::spikeless(n) : SpikeProblem::spiked(n);
        SaRunConfig config = config_template;
        config.n = n;
        config.master_seed = master_seed;
        std::vector<char> ok(trials, 0);
        parallel_for(trials, threads, [&](int t) {
            // Streams are disjoint across n values.
            const std::uint64_t stream = (static_cast<std::uint64_t>(i) << 32) + t;
            ok[t] = run_sa_trial(problem, config, stream).success ? 1 : 0;
        });
        int hits = 0;
        for (char c : ok) hits += c;
        const double rate = static_cast<double>(hits) / trials;
        curve.push_back({n, rate, binomial_ci_halfwidth(rate, trials), trials});
    }
    return curve;
}

// One proposal step of the weight chain: from weight h, a random bit is
// chosen; with probability (n-h)/n it is a 0-bit (h -> h+1 proposal) and
// with probability h/n a 1-bit (h -> h-1), each accepted by Metropolis.
static void apply_proposal_steps(const SpikeProblem& problem, double beta,
                                 std::int64_t steps, std::vector<double>& dist) {
    const int n = problem.n;
    std::vector<double> p_up(n + 1, 0.0), p_down(n + 1, 0.0);
    for (int h = 0; h <= n; ++h) {
        const double f_h = objective_by_weight(problem, h);
        if (h < n) {
            const double d = beta * (objective_by_weight(problem, h + 1) - f_h);
            p_up[h] = (static_cast<double>(n - h) / n) * std::min(1.0, std::exp(-d));
        }
        if (h > 0) {
            const double d = beta * (objective_by_weight(problem, h - 1) - f_h);
            p_down[h] = (static_cast<double>(h) / n) * std::min(1.0, std::exp(-d));
        }
    }
    // Large budgets are evolved by repeated squaring of the one-step
    // matrix: O(n^3 log steps) instead of O(n^2 steps). The entries are
    // nonnegative with unit column sums, so the squaring is stable.
    if (steps > 1024) {
        Eigen::MatrixXd step = Eigen::MatrixXd::Zero(n + 1, n + 1);
        for (int h = 0; h <= n; ++h) {
            step(h, h) = 1.0 - p_up[h] - p_down[h];
            if (h < n) step(h + 1, h) = p_up[h];
            if (h > 0) step(h - 1, h) = p_down[h];
        }
        Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(dist.data(), n + 1);
        for (std::int64_t e = steps; e > 0; e >>= 1) {
            if (e & 1) v = step * v;
            if (e > 1) step = (step * step).eval();
        }
        Eigen::Map<Eigen::VectorXd>(dist.data(), n + 1) = v;
        return;
    }
    std::vector<double> next(n + 1);
    for (std::int64_t t = 0; t < steps; ++t) {
        for (int h = 0; h <= n; ++h) {
            double mass = dist[h] * (1.0 - p_up[h] - p_down[h]);
            if (h > 0) mass += dist[h - 1] * p_up[h - 1];
            if (h < n) mass += dist[h + 1] * p_down[h + 1];
            next[h] = mass;
        }
        dist.swap(next);
    }
}

std::vector<double> sa_exact_final_weight_distribution(const SpikeProblem& problem,
                                                       const SaRunConfig& config) {
    validate(config);
    const int n = problem.n;
    // Binomial(n, 1/2) start (uniformly random string).
    std::vector<double> dist(n + 1);
    double binom = std::pow(0.5, n);
    for (int h = 0; h <= n; ++h) {
        dist[h] = binom;
        binom *= static_cast<double>(n - h) / (h + 1);
    }
    for (double beta : config.beta_schedule)
        apply_proposal_steps(problem, beta, config.sweeps_per_beta * n, dist);
    return dist;
}

double sa_exact_success_probability(const SpikeProblem& problem,
                                    const SaRunConfig& config) {
    return sa_exact_final_weight_distribution(problem, config)[0];
}

}  // namespace sqa
