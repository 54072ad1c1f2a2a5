// Command-line harness: annealing runs, tau_s estimation, scaling scans,
// spectral gap scans, oracle equivalence checks, and offline refits.
//
// Exit codes: 0 success, 2 configuration error, 3 not converged at the
// sweep cap.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqa/annealing.hpp"
#include "sqa/dynamics.hpp"
#include "sqa/fitting.hpp"
#include "sqa/oracle.hpp"
#include "sqa/parallel.hpp"
#include "sqa/sa.hpp"
#include "sqa/version.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNotConverged = 3;

struct GlobalOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::string format = "csv";
    int threads = 1;
};

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    json j;
    try {
        // Comments are allowed so the shipped annotated example config is
        // directly usable.
        j = json::parse(in, nullptr, /*allow_exceptions=*/true,
                        /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw CLI::ValidationError("--config", std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ValidationError("--config", "top level must be an object");
    return j;
}

// Config-file value applies only when the flag was not given on the
// command line; flags always win.
template <typename T>
void cfg(const json& section, const char* key, T& var, bool cli_set) {
    if (!cli_set && section.contains(key)) var = section.at(key).template get<T>();
}

json section_for(const json& config, const std::string& name) {
    json merged = json::object();
    for (const auto& [k, v] : config.items())
        if (!v.is_object()) merged[k] = v;
    if (config.contains(name) && config.at(name).is_object())
        for (const auto& [k, v] : config.at(name).items()) merged[k] = v;
    return merged;
}

void apply_global_cfg(const json& config, GlobalOpts& g, const CLI::App& root) {
    cfg(config, "seed", g.seed, root.count("--seed") > 0);
    cfg(config, "out", g.out_dir, root.count("--out") > 0);
    cfg(config, "format", g.format, root.count("--format") > 0);
    cfg(config, "threads", g.threads, root.count("--threads") > 0);
}

std::ofstream open_out(const GlobalOpts& g, const std::string& name) {
    std::filesystem::create_directories(g.out_dir);
    const auto path = std::filesystem::path(g.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

// Worker-pool size is deliberately omitted: results are independent of it
// and output files must be byte-identical across --threads values.
json params_block(const GlobalOpts& g) {
    return json{{"seed", g.seed}, {"version", sqa::kVersion}};
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

// Minimal log-log SVG line plot for the scaling figure.
void write_scaling_svg(std::ostream& out, const sqa::ScalingResult& result) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : result.points)
        if (p.converged) pts.emplace_back(std::log10(p.n), std::log10(p.tau_s));
    if (pts.size() < 2) return;
    const int w = 480, h = 360, margin = 48;
    auto minmax_x = std::minmax_element(pts.begin(), pts.end());
    double x0 = minmax_x.first->first, x1 = minmax_x.second->first;
    double y0 = pts.front().second, y1 = pts.front().second;
    for (auto& p : pts) {
        y0 = std::min(y0, p.second);
        y1 = std::max(y1, p.second);
    }
    if (x1 - x0 < 1e-9) x1 = x0 + 1;
    if (y1 - y0 < 1e-9) y1 = y0 + 1;
    auto sx = [&](double x) { return margin + (x - x0) / (x1 - x0) * (w - 2 * margin); };
    auto sy = [&](double y) { return h - margin - (y - y0) / (y1 - y0) * (h - 2 * margin); };
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << w / 2 << "' y='20' text-anchor='middle'>sweeps per &#915; vs n "
        << "(log-log), z = " << format_double(result.exponent_z) << "</text>\n";
    out << "<polyline fill='none' stroke='steelblue' stroke-width='2' points='";
    for (auto& p : pts) out << sx(p.first) << ',' << sy(p.second) << ' ';
    out << "'/>\n";
    for (auto& p : pts)
        out << "<circle cx='" << sx(p.first) << "' cy='" << sy(p.second)
            << "' r='4' fill='crimson'/>\n";
    out << "</svg>\n";
}

std::vector<double> parse_beta_schedule(const json& sec) {
    if (sec.contains("beta_schedule"))
        return sec.at("beta_schedule").get<std::vector<double>>();
    return sqa::SaRunConfig::default_beta_schedule();
}

int cmd_sqa(const GlobalOpts& g, const json& sec, CLI::App* cmd, int n, double beta,
            double l_over_n, std::int64_t sweeps, bool worldline, bool spikeless,
            std::uint64_t stream) {
    GlobalOpts go = g;
    cfg(sec, "n", n, cmd->count("--n") > 0);
    cfg(sec, "beta", beta, cmd->count("--beta") > 0);
    cfg(sec, "l-over-n", l_over_n, cmd->count("--l-over-n") > 0);
    cfg(sec, "sweeps", sweeps, cmd->count("--sweeps") > 0);
    cfg(sec, "worldline", worldline, cmd->count("--worldline") > 0);
    cfg(sec, "spikeless", spikeless, cmd->count("--spikeless") > 0);
    cfg(sec, "stream", stream, cmd->count("--stream") > 0);
    if (l_over_n < 0) l_over_n = beta;

    const sqa::SpikeProblem problem =
        spikeless ? sqa::SpikeProblem::spikeless(n) : sqa::SpikeProblem::spiked(n);
    sqa::SqaRunConfig config = sqa::SqaRunConfig::defaults(n, beta);
    config.L = static_cast<int>(std::lround(l_over_n * n));
    config.sweeps_per_gamma = sweeps;
    config.use_worldline = worldline;
    config.master_seed = go.seed;
    const sqa::TrialResult result = sqa::run_sqa_trial(problem, config, stream);

    json out;
    out["params"] = params_block(go);
    out["params"]["n"] = n;
    out["params"]["beta"] = beta;
    out["params"]["L"] = config.L;
    out["params"]["sweeps_per_gamma"] = sweeps;
    out["params"]["worldline"] = worldline;
    out["params"]["spikeless"] = spikeless;
    out["params"]["stream"] = stream;
    out["params"]["schedule"] = {{"gamma_0", config.schedule.gamma_0},
                                 {"ratio", config.schedule.ratio},
                                 {"gamma_min", config.schedule.gamma_min},
                                 {"steps", config.schedule.values.size()}};
    out["success"] = result.success;
    out["sweeps_total"] = result.sweeps_total;
    out["final_weight_profile"] = result.final_weight_profile;
    auto f = open_out(go, "sqa_result.json");
    f << out.dump(2) << '\n';
    std::cout << (result.success ? "success" : "failure") << " after "
              << result.sweeps_total << " sweeps\n";
    return kExitOk;
}

int cmd_sa(const GlobalOpts& g, const json& sec, CLI::App* cmd, std::vector<int> n_list,
           std::int64_t sweeps, int trials, bool spikeless) {
    GlobalOpts go = g;
    cfg(sec, "n", n_list, cmd->count("--n") > 0);
    cfg(sec, "sweeps", sweeps, cmd->count("--sweeps") > 0);
    cfg(sec, "trials", trials, cmd->count("--trials") > 0);
    cfg(sec, "spikeless", spikeless, cmd->count("--spikeless") > 0);

    sqa::SaRunConfig config = sqa::SaRunConfig::defaults(n_list.front(), sweeps);
    config.beta_schedule = parse_beta_schedule(sec);
    config.master_seed = go.seed;
    const auto curve =
        sqa::sa_success_curve(n_list, config, trials, go.seed, go.threads, spikeless);

    auto f = open_out(go, "sa." + go.format);
    if (go.format == "json") {
        json out;
        out["params"] = params_block(go);
        out["params"]["sweeps_per_beta"] = sweeps;
        out["params"]["trials"] = trials;
        out["params"]["spikeless"] = spikeless;
        out["params"]["beta_schedule"] = config.beta_schedule;
        out["points"] = json::array();
        for (const auto& p : curve)
            out["points"].push_back({{"n", p.n},
                                     {"success_rate", p.success_rate},
                                     {"ci_halfwidth", p.ci_halfwidth},
                                     {"trials", p.trials}});
        f << out.dump(2) << '\n';
    } else {
        f << "n,success_rate,ci_halfwidth,trials\n";
        for (const auto& p : curve)
            f << p.n << ',' << format_double(p.success_rate) << ','
              << format_double(p.ci_halfwidth) << ',' << p.trials << '\n';
    }
    for (const auto& p : curve)
        std::cout << "n=" << p.n << " success_rate=" << p.success_rate << " +-"
                  << p.ci_halfwidth << '\n';
    return kExitOk;
}

int cmd_tau(const GlobalOpts& g, const json& sec, CLI::App* cmd, int n, double beta,
            double l_over_n, int trials, double target_rate, std::int64_t cap,
            bool worldline, bool spikeless) {
    GlobalOpts go = g;
    cfg(sec, "n", n, cmd->count("--n") > 0);
    cfg(sec, "beta", beta, cmd->count("--beta") > 0);
    cfg(sec, "l-over-n", l_over_n, cmd->count("--l-over-n") > 0);
    cfg(sec, "trials", trials, cmd->count("--trials") > 0);
    cfg(sec, "target-rate", target_rate, cmd->count("--target-rate") > 0);
    cfg(sec, "cap", cap, cmd->count("--cap") > 0);
    cfg(sec, "worldline", worldline, cmd->count("--worldline") > 0);
    cfg(sec, "spikeless", spikeless, cmd->count("--spikeless") > 0);
    if (l_over_n < 0) l_over_n = beta;

    const sqa::SpikeProblem problem =
        spikeless ? sqa::SpikeProblem::spikeless(n) : sqa::SpikeProblem::spiked(n);
    sqa::SqaRunConfig config = sqa::SqaRunConfig::defaults(n, beta);
    config.L = static_cast<int>(std::lround(l_over_n * n));
    config.use_worldline = worldline;
    config.master_seed = go.seed;
    const sqa::TauEstimate estimate =
        sqa::estimate_tau_s(problem, config, trials, target_rate, cap, go.threads);

    json out;
    out["params"] = params_block(go);
    out["params"]["n"] = n;
    out["params"]["beta"] = beta;
    out["params"]["L"] = config.L;
    out["params"]["trials"] = trials;
    out["params"]["target_rate"] = target_rate;
    out["params"]["cap"] = cap;
    out["params"]["worldline"] = worldline;
    out["params"]["spikeless"] = spikeless;
    out["tau_s"] = estimate.tau_s;
    out["success_rate"] = estimate.success_rate;
    out["ci_halfwidth"] = estimate.ci_halfwidth;
    out["converged"] = estimate.converged;
    out["probes"] = json::array();
    for (const auto& [budget, rate] : estimate.probes)
        out["probes"].push_back({{"sweeps_per_gamma", budget}, {"rate", rate}});
    auto f = open_out(go, "tau_result.json");
    f << out.dump(2) << '\n';
    std::cout << "tau_s=" << estimate.tau_s << " rate=" << estimate.success_rate
              << (estimate.converged ? "" : " (NOT CONVERGED AT CAP)") << '\n';
    return estimate.converged ? kExitOk : kExitNotConverged;
}

int cmd_scaling(const GlobalOpts& g, const json& sec, CLI::App* cmd,
                std::vector<int> n_list, double beta, double l_over_n, int trials,
                double target_rate, std::int64_t cap, bool spikeless, bool worldline,
                bool fast) {
    GlobalOpts go = g;
    cfg(sec, "n", n_list, cmd->count("--n") > 0);
    cfg(sec, "beta", beta, cmd->count("--beta") > 0);
    cfg(sec, "l-over-n", l_over_n, cmd->count("--l-over-n") > 0);
    cfg(sec, "trials", trials, cmd->count("--trials") > 0);
    cfg(sec, "target-rate", target_rate, cmd->count("--target-rate") > 0);
    cfg(sec, "cap", cap, cmd->count("--cap") > 0);
    cfg(sec, "spikeless", spikeless, cmd->count("--spikeless") > 0);
    cfg(sec, "worldline", worldline, cmd->count("--worldline") > 0);
    cfg(sec, "fast", fast, cmd->count("--fast") > 0);
    if (l_over_n < 0) l_over_n = beta;
    if (fast) n_list = {16, 32, 64};

    sqa::ScalingConfig config;
    config.n_list = n_list;
    config.beta = beta;
    config.L_over_n = l_over_n;
    config.trials = trials;
    config.target_rate = target_rate;
    config.sweep_cap = cap;
    config.spikeless = spikeless;
    config.use_worldline = worldline;
    config.master_seed = go.seed;
    config.threads = go.threads;
    const sqa::ScalingResult result = sqa::run_scaling_experiment(config);

    auto csv = open_out(go, "scaling.csv");
    csv << "n,L,tau_s,ci_halfwidth,trials,target_rate\n";
    for (const auto& p : result.points)
        csv << p.n << ',' << p.L << ',' << p.tau_s << ','
            << format_double(p.ci_halfwidth) << ',' << trials << ','
            << format_double(target_rate) << '\n';

    json summary;
    summary["params"] = params_block(go);
    summary["params"]["n_list"] = n_list;
    summary["params"]["beta"] = beta;
    summary["params"]["L_over_n"] = l_over_n;
    summary["params"]["trials"] = trials;
    summary["params"]["target_rate"] = target_rate;
    summary["params"]["cap"] = cap;
    summary["params"]["spikeless"] = spikeless;
    summary["params"]["worldline"] = worldline;
    summary["exponent_z"] = result.exponent_z;
    summary["intercept"] = result.intercept;
    summary["r_squared"] = result.r_squared;
    summary["fit_valid"] = result.fit_valid;
    summary["config_fingerprint"] = result.config_fingerprint;
    summary["points"] = json::array();
    bool all_converged = true;
    for (const auto& p : result.points) {
        summary["points"].push_back({{"n", p.n},
                                     {"L", p.L},
                                     {"tau_s", p.tau_s},
                                     {"success_rate", p.success_rate},
                                     {"ci_halfwidth", p.ci_halfwidth},
                                     {"converged", p.converged}});
        all_converged = all_converged && p.converged;
    }
    auto f = open_out(go, "summary.json");
    f << summary.dump(2) << '\n';
    auto svg = open_out(go, "scaling.svg");
    write_scaling_svg(svg, result);

    std::cout << "exponent_z=" << result.exponent_z << " r2=" << result.r_squared
              << '\n';
    return all_converged ? kExitOk : kExitNotConverged;
}

int cmd_gap(const GlobalOpts& g, const json& sec, CLI::App* cmd, std::vector<int> n_list,
            int grid_points) {
    GlobalOpts go = g;
    cfg(sec, "n", n_list, cmd->count("--n") > 0);
    cfg(sec, "grid-points", grid_points, cmd->count("--grid-points") > 0);

    const auto grid = sqa::default_gamma_grid(grid_points);
    auto csv = open_out(go, "gap.csv");
    csv << "n,gamma,gap\n";
    std::vector<std::pair<double, double>> gmin_points;
    json per_n = json::array();
    for (int n : n_list) {
        const auto problem = sqa::SpikeProblem::spiked(n);
        const sqa::SpectralScan scan = sqa::gap_scan(problem, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            csv << n << ',' << format_double(scan.gamma_grid[i]) << ','
                << format_double(scan.gaps[i]) << '\n';
        gmin_points.emplace_back(n, scan.g_min);
        per_n.push_back({{"n", n},
                         {"g_min", scan.g_min},
                         {"gamma_at_min", scan.gamma_at_min}});
        std::cout << "n=" << n << " g_min=" << scan.g_min
                  << " at gamma=" << scan.gamma_at_min << '\n';
    }
    json summary;
    summary["params"] = params_block(go);
    summary["params"]["n_list"] = n_list;
    summary["params"]["grid_points"] = grid_points;
    summary["per_n"] = per_n;
    if (gmin_points.size() >= 3) {
        const sqa::PowerLawFit fit = sqa::fit_power_law(gmin_points);
        summary["slope"] = fit.slope;
        summary["r_squared"] = fit.r_squared;
        std::cout << "g_min slope=" << fit.slope << '\n';
    }
    auto f = open_out(go, "gap_summary.json");
    f << summary.dump(2) << '\n';
    return kExitOk;
}

int cmd_fit(const GlobalOpts& g, const json& sec, CLI::App* cmd, std::string input,
            std::string x_col, std::string y_col) {
    GlobalOpts go = g;
    cfg(sec, "input", input, cmd->count("--input") > 0);
    cfg(sec, "x-col", x_col, cmd->count("--x-col") > 0);
    cfg(sec, "y-col", y_col, cmd->count("--y-col") > 0);

    std::ifstream in(input);
    if (!in) {
        std::cerr << "fit: cannot open " << input << '\n';
        return kExitConfig;
    }
    std::string header;
    if (!std::getline(in, header)) {
        std::cerr << "fit: empty file\n";
        return kExitConfig;
    }
    std::vector<std::string> cols;
    std::stringstream hs(header);
    for (std::string c; std::getline(hs, c, ',');) cols.push_back(c);
    const auto xi = std::find(cols.begin(), cols.end(), x_col) - cols.begin();
    const auto yi = std::find(cols.begin(), cols.end(), y_col) - cols.begin();
    if (xi == static_cast<long>(cols.size()) || yi == static_cast<long>(cols.size())) {
        std::cerr << "fit: columns '" << x_col << "'/'" << y_col << "' not in header\n";
        return kExitConfig;
    }
    std::vector<std::pair<double, double>> points;
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) row.push_back(std::stod(c));
        points.emplace_back(row[xi], row[yi]);
    }
    const sqa::PowerLawFit fit = sqa::fit_power_law(points);
    json out;
    out["params"] = params_block(go);
    out["params"]["input"] = input;
    out["slope"] = fit.slope;
    out["intercept"] = fit.intercept;
    out["r_squared"] = fit.r_squared;
    auto f = open_out(go, "fit.json");
    f << out.dump(2) << '\n';
    std::cout << "slope=" << fit.slope << " r2=" << fit.r_squared << '\n';
    return kExitOk;
}

int cmd_oracle_check(const GlobalOpts& g, const json& sec, CLI::App* cmd) {
    GlobalOpts go = g;
    int failures = 0;
    auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS" : "FAIL") << ' ' << name << '\n';
        if (!ok) ++failures;
    };

    // flip_delta vs full recomputation.
    {
        sqa::RngStream rng(go.seed, 1);
        const auto problem = sqa::SpikeProblem::spiked(8);
        auto lattice = sqa::WorldlineLattice::random(8, 16, rng);
        const auto params = sqa::PimcParams::make(4.0, 0.5, 16);
        double worst = 0.0;
        for (int t = 0; t < 2000; ++t) {
            const int slice = static_cast<int>(rng.next_below(16));
            const int bit = static_cast<int>(rng.next_below(8));
            const double before = sqa::effective_energy(problem, lattice, params);
            const double delta = sqa::flip_delta(problem, lattice, params, slice, bit);
            lattice.apply_flip(slice, bit);
            const double after = sqa::effective_energy(problem, lattice, params);
            worst = std::max(worst, std::abs(after - before - delta));
        }
        report("flip_delta matches recomputation (|err| < 1e-9)", worst < 1e-9);
    }

    // Chain equilibrium vs exact Boltzmann enumeration (n=2, L=2).
    {
        const auto problem = sqa::SpikeProblem{2, -1, 0.0};  // f = h, no spike
        const auto params = sqa::PimcParams::make(1.0, 1.0, 2);
        std::vector<double> exact(16, 0.0);
        double z = 0.0;
        for (int c = 0; c < 16; ++c) {
            sqa::WorldlineLattice lat(2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    if (c & (1 << (i * 2 + j))) lat.apply_flip(i, j);
            exact[c] = std::exp(-sqa::effective_energy(problem, lat, params));
            z += exact[c];
        }
        for (auto& e : exact) e /= z;
        sqa::RngStream rng(go.seed, 2);
        sqa::WorldlineLattice lat(2, 2);
        sqa::MetropolisSweeper sweeper(problem, params);
        std::vector<double> counts(16, 0.0);
        const int burnin = 2000, samples = 400000;
        for (int t = 0; t < burnin + samples; ++t) {
            sweeper.random_site_sweep(lat, rng);
            if (t < burnin) continue;
            int c = 0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    if (lat.spin(i, j) == -1) c |= 1 << (i * 2 + j);
            counts[c] += 1.0;
        }
        double tv = 0.0;
        for (int c = 0; c < 16; ++c) tv += std::abs(counts[c] / samples - exact[c]);
        report("chain equilibrium matches enumeration (TV < 0.02)", tv / 2 < 0.02);
    }

    // Trotter partition sum vs dense trace.
    {
        const auto problem = sqa::SpikeProblem::spiked(4);
        const double exact = sqa::exact_partition(problem, 1.0, 1.0);
        const double approx = sqa::brute_force_trotter_partition(problem, 1.0, 1.0, 5);
        report("Trotter partition within 5% of dense trace at L=5",
               std::abs(approx / exact - 1.0) < 0.05);
    }

    // Symmetric sector vs full Hamiltonian. The ground state is symmetric
    // for every gamma; the first excited level is symmetric near the
    // avoided crossing, which is where the gap minimum lives.
    {
        const auto problem = sqa::SpikeProblem::spiked(8);
        bool ok = true;
        for (double gamma : {0.05, 0.2, 0.5, 1.0, 2.0}) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
                sqa::full_hamiltonian(problem, gamma));
            const auto [e0, e1] = sqa::symmetric_lowest_two(problem, gamma);
            ok = ok && std::abs(solver.eigenvalues()[0] - e0) < 1e-10;
            if (gamma >= 0.5 && gamma <= 1.0)
                ok = ok && std::abs(solver.eigenvalues()[1] - e1) < 1e-10;
        }
        report("symmetric sector matches dense spectrum (1e-10)", ok);
    }

    return failures == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulated quantum annealing engine for the spiked Hamming-weight objective"};
    app.require_subcommand(1);
    app.set_version_flag("--version", sqa::kVersion);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "JSON config file; flags override")
        ->expected(1);
    app.add_option("--seed", g.seed, "master RNG seed");
    app.add_option("--out", g.out_dir, "output directory");
    app.add_option("--format", g.format, "tabular output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", g.threads, "worker pool size")
        ->check(CLI::PositiveNumber);
    app.fallthrough();

    // sqa
    auto* sqa_cmd = app.add_subcommand("sqa", "single annealing run");
    int sqa_n = 16;
    double sqa_beta = 32.0, sqa_lon = -1.0;
    std::int64_t sqa_sweeps = 64;
    bool sqa_worldline = false, sqa_spikeless = false;
    std::uint64_t sqa_stream = 0;
    sqa_cmd->add_option("--n", sqa_n, "number of bits (multiple of 4)");
    sqa_cmd->add_option("--beta", sqa_beta, "inverse temperature");
    sqa_cmd->add_option("--l-over-n", sqa_lon, "L = l_over_n * n (default: beta)");
    sqa_cmd->add_option("--sweeps", sqa_sweeps, "sweeps per transverse-field value");
    sqa_cmd->add_flag("--worldline", sqa_worldline, "enable worldline resampling");
    sqa_cmd->add_flag("--spikeless", sqa_spikeless, "barrier-free control objective");
    sqa_cmd->add_option("--stream", sqa_stream, "RNG stream id");

    // sa
    auto* sa_cmd = app.add_subcommand("sa", "classical annealing baseline");
    std::vector<int> sa_n{16};
    std::int64_t sa_sweeps = 200;
    int sa_trials = 100;
    bool sa_spikeless = false;
    sa_cmd->add_option("--n", sa_n, "system sizes")->delimiter(',');
    sa_cmd->add_option("--sweeps", sa_sweeps, "sweeps per temperature");
    sa_cmd->add_option("--trials", sa_trials, "trials per size");
    sa_cmd->add_flag("--spikeless", sa_spikeless, "barrier-free control objective");

    // tau
    auto* tau_cmd = app.add_subcommand("tau", "estimate the sweep budget tau_s");
    int tau_n = 16, tau_trials = 20;
    double tau_beta = 8.0, tau_lon = -1.0, tau_target = 0.5;
    std::int64_t tau_cap = sqa::kSweepCap;
    bool tau_worldline = false, tau_spikeless = false;
    tau_cmd->add_option("--n", tau_n, "number of bits");
    tau_cmd->add_option("--beta", tau_beta, "inverse temperature");
    tau_cmd->add_option("--l-over-n", tau_lon, "L = l_over_n * n (default: beta)");
    tau_cmd->add_option("--trials", tau_trials, "trials per budget");
    tau_cmd->add_option("--target-rate", tau_target, "required success rate");
    tau_cmd->add_option("--cap", tau_cap, "sweep budget cap");
    tau_cmd->add_flag("--worldline", tau_worldline, "enable worldline resampling");
    tau_cmd->add_flag("--spikeless", tau_spikeless, "barrier-free control objective");

    // scaling
    auto* sc_cmd = app.add_subcommand("scaling", "tau_s vs n scan and power-law fit");
    std::vector<int> sc_n{16, 32, 64, 128};
    double sc_beta = 8.0, sc_lon = -1.0, sc_target = 0.5;
    int sc_trials = 20;
    std::int64_t sc_cap = sqa::kSweepCap;
    bool sc_spikeless = false, sc_worldline = false, sc_fast = false;
    sc_cmd->add_option("--n", sc_n, "system sizes")->delimiter(',');
    sc_cmd->add_option("--beta", sc_beta, "inverse temperature");
    sc_cmd->add_option("--l-over-n", sc_lon, "L = l_over_n * n (default: beta)");
    sc_cmd->add_option("--trials", sc_trials, "trials per budget");
    sc_cmd->add_option("--target-rate", sc_target, "required success rate");
    sc_cmd->add_option("--cap", sc_cap, "sweep budget cap");
    sc_cmd->add_flag("--spikeless", sc_spikeless, "barrier-free control objective");
    sc_cmd->add_flag("--worldline", sc_worldline, "enable worldline resampling");
    sc_cmd->add_flag("--fast", sc_fast, "three-point profile n=16,32,64");

    // gap
    auto* gap_cmd = app.add_subcommand("gap", "symmetric-sector spectral gap scan");
    std::vector<int> gap_n{64, 128, 256};
    int gap_points = 64;
    gap_cmd->add_option("--n", gap_n, "system sizes")->delimiter(',');
    gap_cmd->add_option("--grid-points", gap_points, "coarse gamma grid size");

    // oracle-check
    auto* oc_cmd = app.add_subcommand("oracle-check", "run equivalence suites");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "refit a power law from a CSV");
    std::string fit_input = "scaling.csv", fit_x = "n", fit_y = "tau_s";
    fit_cmd->add_option("--input", fit_input, "CSV path");
    fit_cmd->add_option("--x-col", fit_x, "x column name");
    fit_cmd->add_option("--y-col", fit_y, "y column name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help / --version
        app.exit(e);
        return kExitConfig;
    }

    try {
        const json config = load_config(g.config_path);
        apply_global_cfg(config, g, app);
        if (sqa_cmd->parsed()) {
            return cmd_sqa(g, section_for(config, "sqa"), sqa_cmd, sqa_n, sqa_beta,
                           sqa_lon, sqa_sweeps, sqa_worldline, sqa_spikeless, sqa_stream);
        }
        if (sa_cmd->parsed())
            return cmd_sa(g, section_for(config, "sa"), sa_cmd, sa_n, sa_sweeps,
                          sa_trials, sa_spikeless);
        if (tau_cmd->parsed()) {
            return cmd_tau(g, section_for(config, "tau"), tau_cmd, tau_n, tau_beta,
                           tau_lon, tau_trials, tau_target, tau_cap, tau_worldline,
                           tau_spikeless);
        }
        if (sc_cmd->parsed()) {
            return cmd_scaling(g, section_for(config, "scaling"), sc_cmd, sc_n, sc_beta,
                               sc_lon, sc_trials, sc_target, sc_cap, sc_spikeless,
                               sc_worldline, sc_fast);
        }
        if (gap_cmd->parsed())
            return cmd_gap(g, section_for(config, "gap"), gap_cmd, gap_n, gap_points);
        if (oc_cmd->parsed()) return cmd_oracle_check(g, section_for(config, "oracle-check"), oc_cmd);
        if (fit_cmd->parsed())
            return cmd_fit(g, section_for(config, "fit"), fit_cmd, fit_input, fit_x, fit_y);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitConfig;
}
