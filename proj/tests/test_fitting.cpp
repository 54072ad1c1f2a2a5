#include <doctest.h>

#include <cmath>

#include "sqa/fitting.hpp"
#include "sqa/rng.hpp"

using namespace sqa;

TEST_CASE("exact power laws are recovered") {
    std::vector<std::pair<double, double>> quadratic;
    for (double x : {2.0, 4.0, 8.0, 16.0, 32.0}) quadratic.emplace_back(x, 7 * x * x);
    const auto fit = fit_power_law(quadratic);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<std::pair<double, double>> constant{{1, 5}, {10, 5}, {100, 5}};
    CHECK(fit_power_law(constant).slope == doctest::Approx(0.0));
}

TEST_CASE("input validation") {
    CHECK_THROWS(fit_power_law({{1, 1}, {2, 4}}));
    CHECK_THROWS(fit_power_law({{1, 1}, {2, 4}, {-3, 9}}));
    CHECK_THROWS(fit_power_law({{1, 1}, {2, 0}, {3, 9}}));
    CHECK_THROWS(fit_power_law({{2, 1}, {2, 4}, {2, 9}}));  // degenerate x
}

TEST_CASE("planted exponent survives 5% multiplicative noise") {
    RngStream rng(1234, 0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<std::pair<double, double>> points;
        for (double x = 8; x <= 1024; x *= 2) {
            const double noise = 1.0 + 0.05 * (2.0 * rng.next_double() - 1.0);
            points.emplace_back(x, 0.3 * std::pow(x, 2.3) * noise);
        }
        CHECK(std::abs(fit_power_law(points).slope - 2.3) < 0.05);
    }
}

TEST_CASE("fingerprint is deterministic and parameter-sensitive") {
    ScalingConfig a;
    a.n_list = {16, 32, 64};
    ScalingConfig b = a;
    CHECK(fingerprint(canonical_config_string(a)) ==
          fingerprint(canonical_config_string(b)));
    b.beta = 16.0;
    CHECK(fingerprint(canonical_config_string(a)) !=
          fingerprint(canonical_config_string(b)));
}

TEST_CASE("scaling experiment: validation and the < 3 point refusal") {
    ScalingConfig bad;
    bad.n_list = {32, 16};
    CHECK_THROWS(run_scaling_experiment(bad));
    bad.n_list = {6};
    CHECK_THROWS(run_scaling_experiment(bad));

    ScalingConfig single;
    single.n_list = {8};
    single.spikeless = true;
    single.trials = 4;
    single.beta = 8.0;
    const auto result = run_scaling_experiment(single);
    CHECK_FALSE(result.fit_valid);
    REQUIRE(result.points.size() == 1);
    CHECK(result.points[0].L == 64);
    CHECK(result.points[0].converged);
}
