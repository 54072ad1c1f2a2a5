#include "sqa/dynamics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace sqa {

bool metropolis_accept(double delta_beta_E, RngStream& rng) {
    if (!std::isfinite(delta_beta_E))
        throw std::invalid_argument("metropolis_accept: delta must be finite");
    if (delta_beta_E <= 0.0) return true;
    return rng.next_double() < std::exp(-delta_beta_E);
}

MetropolisSweeper::MetropolisSweeper(const SpikeProblem& problem,
                                     const PimcParams& params)
    : problem_(problem), params_(params) {
    rebuild_table();
}

void MetropolisSweeper::set_params(const PimcParams& params) {
    params_ = params;
    rebuild_table();
}

void MetropolisSweeper::rebuild_table() {
    const int n = problem_.n;
    const double w = params_.beta / params_.L;
    const double J = params_.coupling_J;
    table_.assign(static_cast<std::size_t>(n + 1) * 6, Entry{2.0, 0.0});
    for (int h = 0; h <= n; ++h) {
        for (int dir = 0; dir < 2; ++dir) {
            const int h_new = (dir == 0) ? h + 1 : h - 1;
            if (h_new < 0 || h_new > n) continue;  // unreachable combinations
            const double df = objective_by_weight(problem_, h_new) -
                              objective_by_weight(problem_, h);
            for (int bond_case = 0; bond_case < 3; ++bond_case) {
                const int c = 2 * bond_case - 2;  // s*(s_prev+s_next)
                const double delta = w * df + 2.0 * J * c;
                Entry& e = table_[static_cast<std::size_t>(h) * 6 + dir * 3 + bond_case];
                e.delta = delta;
                e.prob = (delta <= 0.0) ? 2.0 : std::exp(-delta);
            }
        }
    }
}

bool MetropolisSweeper::propose(WorldlineLattice& lattice, int slice, int bit,
                                RngStream& rng, double& energy) const {
    const int n = lattice.n();
    const int L = lattice.num_slices();
    Spin* spins = lattice.data();
    const Spin* row = spins + static_cast<std::size_t>(slice) * n;
    const Spin* up = spins + static_cast<std::size_t>(slice == 0 ? L - 1 : slice - 1) * n;
    const Spin* dn = spins + static_cast<std::size_t>(slice + 1 == L ? 0 : slice + 1) * n;
    const int s = row[bit];
    const int dir = (s == 1) ? 0 : 1;
    const int bond_case = (s * (up[bit] + dn[bit]) + 2) / 2;
    const Entry& e = entry(lattice.slice_weight(slice), dir, bond_case);
    if (e.prob < 2.0 && rng.next_double() >= e.prob) return false;
    lattice.apply_flip(slice, bit);
    energy += e.delta;
    return true;
}

SweepReport MetropolisSweeper::sweep(WorldlineLattice& lattice, RngStream& rng,
                                     double current_energy) const {
    const int n = lattice.n();
    const int L = lattice.num_slices();
    if (n != problem_.n || L != params_.L)
        throw std::invalid_argument("sweep: dimension mismatch");
    SweepReport report;
    report.attempted = static_cast<std::int64_t>(n) * L;
    double energy = current_energy;
    Spin* spins = lattice.data();
    int* weights = lattice.weights_data();
    for (int i = 0; i < L; ++i) {
        Spin* row = spins + static_cast<std::size_t>(i) * n;
        const Spin* up = spins + static_cast<std::size_t>(i == 0 ? L - 1 : i - 1) * n;
        const Spin* dn = spins + static_cast<std::size_t>(i + 1 == L ? 0 : i + 1) * n;
        int h = weights[i];
        for (int j = 0; j < n; ++j) {
            const int s = row[j];
            const int dir = (s == 1) ? 0 : 1;
            const int bond_case = (s * (up[j] + dn[j]) + 2) / 2;
            const Entry& e = entry(h, dir, bond_case);
            if (e.prob < 2.0 && rng.next_double() >= e.prob) continue;
            row[j] = static_cast<Spin>(-s);
            h += (s == 1) ? 1 : -1;
            energy += e.delta;
            ++report.accepted;
        }
        weights[i] = h;
    }
    report.final_energy = energy;
    return report;
}

SweepReport MetropolisSweeper::random_site_sweep(WorldlineLattice& lattice,
                                                 RngStream& rng,
                                                 double current_energy) const {
    const int n = lattice.n();
    const int L = lattice.num_slices();
    if (n != problem_.n || L != params_.L)
        throw std::invalid_argument("random_site_sweep: dimension mismatch");
    SweepReport report;
    report.attempted = static_cast<std::int64_t>(n) * L;
    double energy = current_energy;
    const std::uint64_t sites = static_cast<std::uint64_t>(n) * L;
    for (std::int64_t t = 0; t < report.attempted; ++t) {
        const std::uint64_t site = rng.next_below(sites);
        const int slice = static_cast<int>(site / n);
        const int bit = static_cast<int>(site % n);
        if (propose(lattice, slice, bit, rng, energy)) ++report.accepted;
    }
    report.final_energy = energy;
    return report;
}

void worldline_resample(const SpikeProblem& problem, WorldlineLattice& lattice,
                        const PimcParams& params, int qubit, RngStream& rng) {
    const int n = lattice.n();
    const int L = lattice.num_slices();
    if (n != problem.n || L != params.L)
        throw std::invalid_argument("worldline_resample: dimension mismatch");
    if (qubit < 0 || qubit >= n)
        throw std::out_of_range("worldline_resample: qubit index");
    const double w = params.beta / L;
    const double J = params.coupling_J;
    const double b_aligned = std::exp(J);
    const double b_opposed = std::exp(-J);

    // Site weights: w_i(sigma) = exp(-(beta/L) f(slice i with qubit set to
    // sigma)), shifted per slice so the larger weight is 1.
    std::vector<double> site_plus(L), site_minus(L);
    for (int i = 0; i < L; ++i) {
        const int h_plus = lattice.slice_weight(i) - (lattice.spin(i, qubit) == -1 ? 1 : 0);
        const double f_plus = objective_by_weight(problem, h_plus);
        const double f_minus = objective_by_weight(problem, h_plus + 1);
        const double shift = std::min(f_plus, f_minus);
        site_plus[i] = std::exp(-w * (f_plus - shift));
        site_minus[i] = std::exp(-w * (f_minus - shift));
    }

    auto bond = [&](int a, int b) { return (a == b) ? b_aligned : b_opposed; };

    // Periodic chain: condition on the first spin, run a normalized
    // forward pass, close the ring, and keep the log partition value.
    // alpha[i][v] is stored for backward sampling; v 0 -> +1, 1 -> -1.
    std::vector<std::array<double, 2>> alpha_a(L), alpha_b(L);
    double log_z[2];
    for (int ai = 0; ai < 2; ++ai) {
        auto& alpha = (ai == 0) ? alpha_a : alpha_b;
        const int a = (ai == 0) ? 1 : -1;
        double log_scale = 0.0;
        alpha[0] = {0.0, 0.0};
        alpha[0][ai] = (ai == 0) ? site_plus[0] : site_minus[0];
        for (int i = 1; i < L; ++i) {
            const double from_plus = alpha[i - 1][0];
            const double from_minus = alpha[i - 1][1];
            double ap = (from_plus * bond(1, 1) + from_minus * bond(-1, 1)) * site_plus[i];
            double am = (from_plus * bond(1, -1) + from_minus * bond(-1, -1)) * site_minus[i];
            const double norm = ap + am;
            alpha[i] = {ap / norm, am / norm};
            log_scale += std::log(norm);
        }
        const double closed = alpha[L - 1][0] * bond(1, a) + alpha[L - 1][1] * bond(-1, a);
        log_z[ai] = log_scale + std::log(closed);
    }

    const double p_plus = 1.0 / (1.0 + std::exp(log_z[1] - log_z[0]));
    const int first = (rng.next_double() < p_plus) ? 1 : -1;
    const auto& alpha = (first == 1) ? alpha_a : alpha_b;

    std::vector<Spin> column(L);
    column[0] = static_cast<Spin>(first);
    // Backward sampling from the closing bond inward.
    int succ = first;  // spin at site i+1 (site 0 for i = L-1, via the ring)
    for (int i = L - 1; i >= 1; --i) {
        const double wp = alpha[i][0] * bond(1, succ);
        const double wm = alpha[i][1] * bond(-1, succ);
        const int v = (rng.next_double() < wp / (wp + wm)) ? 1 : -1;
        column[i] = static_cast<Spin>(v);
        succ = v;
    }
    lattice.set_column(qubit, column);
}

}  // namespace sqa
