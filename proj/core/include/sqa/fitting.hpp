#ifndef SQA_FITTING_HPP
#define SQA_FITTING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sqa/annealing.hpp"

namespace sqa {

struct PowerLawFit {
    double slope;
    double intercept;  // of the log-log line
    double r_squared;
};

// Unweighted ordinary least squares on (ln x, ln y). Requires >= 3
// strictly positive points.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points);

struct ScalingPoint {
    int n;
    int L;
    std::int64_t tau_s;
    double success_rate;
    double ci_halfwidth;
    bool converged;
};

struct ScalingResult {
    std::vector<ScalingPoint> points;  // sorted by n
    double exponent_z = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    bool fit_valid = false;
    std::uint64_t config_fingerprint = 0;
};

struct ScalingConfig {
    std::vector<int> n_list;
    double beta = 8.0;
    double L_over_n = 8.0;  // L = round(L_over_n * n)
    int trials = 20;
    double target_rate = 0.5;
    double gamma_0 = 1.0;
    double ratio = 0.7;
    double gamma_min = 1e-12;
    std::int64_t sweep_cap = kSweepCap;
    bool spikeless = false;
    bool use_worldline = false;
    std::uint64_t master_seed = 0;
    int threads = 1;
};

// estimate_tau_s per n; non-converged points are kept in the table but
// excluded from the fit.
ScalingResult run_scaling_experiment(const ScalingConfig& config);

// FNV-1a over a canonical rendering of the configuration.
std::uint64_t fingerprint(const std::string& canonical);
std::string canonical_config_string(const ScalingConfig& config);

}  // namespace sqa

#endif
