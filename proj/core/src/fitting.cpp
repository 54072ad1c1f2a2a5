#include "sqa/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sqa {

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_power_law: need at least 3 points");
    const auto m = static_cast<double>(points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : points) {
        if (x <= 0 || y <= 0)
            throw std::invalid_argument("fit_power_law: points must be positive");
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    const double sxx_c = sxx - sx * sx / m;
    const double sxy_c = sxy - sx * sy / m;
    const double syy_c = syy - sy * sy / m;
    if (sxx_c <= 1e-12 * std::max(1.0, sxx))
        throw std::invalid_argument("fit_power_law: degenerate x values");
    PowerLawFit fit;
    fit.slope = sxy_c / sxx_c;
    fit.intercept = (sy - fit.slope * sx) / m;
    fit.r_squared = (syy_c <= 0) ? 1.0 : (sxy_c * sxy_c) / (sxx_c * syy_c);
    return fit;
}

std::string canonical_config_string(const ScalingConfig& config) {
    std::ostringstream out;
    out << "scaling;beta=" << config.beta << ";L_over_n=" << config.L_over_n
        << ";trials=" << config.trials << ";target_rate=" << config.target_rate
        << ";gamma_0=" << config.gamma_0 << ";ratio=" << config.ratio
        << ";gamma_min=" << config.gamma_min << ";sweep_cap=" << config.sweep_cap
        << ";spikeless=" << config.spikeless << ";worldline=" << config.use_worldline
        << ";seed=" << config.master_seed << ";n=";
    for (int n : config.n_list) out << n << ',';
    return out.str();
}

std::uint64_t fingerprint(const std::string& canonical) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

ScalingResult run_scaling_experiment(const ScalingConfig& config) {
    if (!std::is_sorted(config.n_list.begin(), config.n_list.end()))
        throw std::invalid_argument("run_scaling_experiment: n_list must be ascending");
    for (int n : config.n_list)
        if (n < 4 || n % 4 != 0)
            throw std::invalid_argument("run_scaling_experiment: n must be multiple of 4");

    ScalingResult result;
    result.config_fingerprint = fingerprint(canonical_config_string(config));
    for (std::size_t i = 0; i < config.n_list.size(); ++i) {
        const int n = config.n_list[i];
        const SpikeProblem problem =
            config.spikeless ? SpikeProblem::spikeless(n) : SpikeProblem::spiked(n);
        SqaRunConfig run = SqaRunConfig::defaults(n, config.beta);
        run.L = static_cast<int>(std::lround(config.L_over_n * n));
        run.schedule = build_schedule(config.gamma_0, config.ratio, config.gamma_min);
        run.use_worldline = config.use_worldline;
        run.master_seed = config.master_seed;
        // Streams disjoint across n values, shared across sweep budgets.
        const std::uint64_t stream_base = static_cast<std::uint64_t>(i) << 32;
        const TauEstimate estimate =
            estimate_tau_s(problem, run, config.trials, config.target_rate,
                           config.sweep_cap, config.threads, stream_base);
        result.points.push_back({n, run.L, estimate.tau_s, estimate.success_rate,
                                 estimate.ci_halfwidth, estimate.converged});
    }

    std::vector<std::pair<double, double>> fit_points;
    for (const auto& p : result.points)
        if (p.converged)
            fit_points.emplace_back(static_cast<double>(p.n),
                                    static_cast<double>(p.tau_s));
    if (fit_points.size() >= 3) {
        const PowerLawFit fit = fit_power_law(fit_points);
        result.exponent_z = fit.slope;
        result.intercept = fit.intercept;
        result.r_squared = fit.r_squared;
        result.fit_valid = true;
    }
    return result;
}

}  // namespace sqa
