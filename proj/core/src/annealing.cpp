#include "sqa/annealing.hpp"

#include <cmath>
#include <stdexcept>

#include "sqa/parallel.hpp"

namespace sqa {

AnnealSchedule build_schedule(double gamma_0, double ratio, double gamma_min) {
    if (!(ratio > 0.0 && ratio < 1.0))
        throw std::invalid_argument("build_schedule: ratio must be in (0, 1)");
    if (!(gamma_min > 0.0 && gamma_min < gamma_0))
        throw std::invalid_argument("build_schedule: need 0 < gamma_min < gamma_0");
    AnnealSchedule schedule{gamma_0, ratio, gamma_min, {}};
    double gamma = gamma_0;
    schedule.values.push_back(gamma);
    while (gamma > gamma_min) {
        gamma *= ratio;
        schedule.values.push_back(gamma);
    }
    return schedule;
}

SqaRunConfig SqaRunConfig::defaults(int n, double beta) {
    SqaRunConfig config;
    config.n = n;
    config.beta = beta;
    config.L = static_cast<int>(beta) * n;
    config.sweeps_per_gamma = 1;
    config.schedule = default_schedule();
    return config;
}

TrialResult run_sqa_trial(const SpikeProblem& problem, const SqaRunConfig& config,
                          std::uint64_t stream_id) {
    if (config.L < 2 || config.sweeps_per_gamma < 1)
        throw std::invalid_argument("run_sqa_trial: invalid config");
    RngStream rng(config.master_seed, stream_id);
    WorldlineLattice lattice = WorldlineLattice::random(config.n, config.L, rng);
    MetropolisSweeper sweeper(problem,
                              PimcParams::make(config.beta, config.schedule.values.front(),
                                               config.L));
    TrialResult result;
    result.stream_id = stream_id;
    for (double gamma : config.schedule.values) {
        sweeper.set_params(PimcParams::make(config.beta, gamma, config.L));
        for (std::int64_t s = 0; s < config.sweeps_per_gamma; ++s) {
            sweeper.sweep(lattice, rng);
            if (config.use_worldline)
                for (int k = 0; k < config.n; ++k)
                    worldline_resample(problem, lattice, sweeper.params(), k, rng);
        }
        result.sweeps_total += config.sweeps_per_gamma;
    }
    result.success =
        config.frozen_success ? lattice.all_plus() : lattice.any_slice_all_plus();
    result.final_weight_profile = lattice.slice_weights();
    return result;
}

double binomial_ci_halfwidth(double rate, int trials) {
    return 1.96 * std::sqrt(rate * (1.0 - rate) / trials);
}

namespace {

double success_rate(const SpikeProblem& problem, SqaRunConfig config,
                    std::int64_t sweeps, int trials, int threads,
                    std::uint64_t trial_stream_base) {
    config.sweeps_per_gamma = sweeps;
    std::vector<char> ok(trials, 0);
    parallel_for(trials, threads, [&](int t) {
        ok[t] = run_sqa_trial(problem, config, trial_stream_base + t).success ? 1 : 0;
    });
    int hits = 0;
    for (char c : ok) hits += c;
    return static_cast<double>(hits) / trials;
}

}  // namespace

TauEstimate estimate_tau_s(const SpikeProblem& problem, const SqaRunConfig& config_template,
                           int trials, double target_rate, std::int64_t cap,
                           int threads, std::uint64_t trial_stream_base) {
    if (trials < 1) throw std::invalid_argument("estimate_tau_s: trials must be >= 1");
    if (!(target_rate > 0.0 && target_rate < 1.0))
        throw std::invalid_argument("estimate_tau_s: target_rate must be in (0, 1)");
    TauEstimate estimate;
    estimate.cap = cap;

    auto probe = [&](std::int64_t sweeps) {
        const double rate = success_rate(problem, config_template, sweeps, trials,
                                         threads, trial_stream_base);
        estimate.probes.emplace_back(sweeps, rate);
        return rate;
    };

    // Doubling phase.
    std::int64_t lo = 0, hi = 0;
    double hi_rate = 0.0;
    for (std::int64_t sweeps = 1; sweeps <= cap; sweeps *= 2) {
        const double rate = probe(sweeps);
        if (rate >= target_rate) {
            hi = sweeps;
            hi_rate = rate;
            break;
        }
        lo = sweeps;
    }
    if (hi == 0) {
        estimate.converged = false;
        estimate.tau_s = cap;
        return estimate;
    }

    // Geometric bisection to a 1.1 multiplicative bracket.
    while (lo > 0 && hi > static_cast<std::int64_t>(std::ceil(lo * 1.1))) {
        const auto mid = static_cast<std::int64_t>(
            std::llround(std::sqrt(static_cast<double>(lo) * static_cast<double>(hi))));
        if (mid <= lo || mid >= hi) break;
        const double rate = probe(mid);
        if (rate >= target_rate) {
            hi = mid;
            hi_rate = rate;
        } else {
            lo = mid;
        }
    }

    estimate.converged = true;
    estimate.tau_s = hi;
    estimate.success_rate = hi_rate;
    estimate.ci_halfwidth = binomial_ci_halfwidth(hi_rate, trials);
    return estimate;
}

}  // namespace sqa
