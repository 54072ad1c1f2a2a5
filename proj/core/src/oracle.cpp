#include "sqa/oracle.hpp"

#include <lapacke.h>

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sqa/pimc.hpp"

namespace sqa {

Eigen::MatrixXd full_hamiltonian(const SpikeProblem& problem, double gamma) {
    const int n = problem.n;
    if (n > 12)
        throw std::invalid_argument(
            "full_hamiltonian: n > 12 is dense-infeasible; use symmetric_hamiltonian");
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t z = 0; z < dim; ++z) {
        H(z, z) = objective_by_weight(problem, std::popcount(z));
        for (int j = 0; j < n; ++j) H(z, z ^ (std::size_t{1} << j)) = -gamma;
    }
    return H;
}

TridiagonalHamiltonian symmetric_hamiltonian(const SpikeProblem& problem, double gamma) {
    const int n = problem.n;
    TridiagonalHamiltonian tri;
    tri.diagonal.resize(n + 1);
    tri.subdiagonal.resize(n);
    for (int h = 0; h <= n; ++h) tri.diagonal[h] = objective_by_weight(problem, h);
    for (int h = 0; h < n; ++h)
        tri.subdiagonal[h] = -gamma * std::sqrt(static_cast<double>(h + 1) * (n - h));
    return tri;
}

std::pair<double, double> symmetric_lowest_two(const SpikeProblem& problem, double gamma) {
    TridiagonalHamiltonian tri = symmetric_hamiltonian(problem, gamma);
    const lapack_int dim = static_cast<lapack_int>(tri.diagonal.size());
    // dstevr with an index range solves for just the two lowest levels;
    // a full QL pass is ~100x slower at n = 4096.
    std::vector<double> eigenvalues(dim);
    std::vector<lapack_int> isuppz(4);
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dstevr(
        LAPACK_COL_MAJOR, 'N', 'I', dim, tri.diagonal.data(), tri.subdiagonal.data(),
        0.0, 0.0, 1, 2, 0.0, &found, eigenvalues.data(), nullptr, 1, isuppz.data());
    if (info != 0 || found < 2)
        throw std::runtime_error("symmetric_lowest_two: eigensolver failed");
    return {eigenvalues[0], eigenvalues[1]};
}

std::vector<double> default_gamma_grid(int points, double lo, double hi) {
    std::vector<double> grid(points);
    const double step = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) grid[i] = lo * std::exp(step * i);
    return grid;
}

SpectralScan gap_scan(const SpikeProblem& problem, const std::vector<double>& gamma_grid) {
    if (gamma_grid.size() < 16)
        throw std::invalid_argument("gap_scan: need at least 16 grid points");
    for (double g : gamma_grid)
        if (g <= 0) throw std::invalid_argument("gap_scan: grid must be positive");

    SpectralScan scan;
    scan.n = problem.n;
    scan.gamma_grid = gamma_grid;
    scan.gaps.reserve(gamma_grid.size());
    auto gap_at = [&](double gamma) {
        const auto [e0, e1] = symmetric_lowest_two(problem, gamma);
        return e1 - e0;
    };
    std::size_t arg_min = 0;
    for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
        scan.gaps.push_back(gap_at(gamma_grid[i]));
        if (scan.gaps[i] < scan.gaps[arg_min]) arg_min = i;
    }
    double best_gamma = gamma_grid[arg_min];
    double best_gap = scan.gaps[arg_min];
    double lo = gamma_grid[arg_min > 0 ? arg_min - 1 : 0];
    double hi = gamma_grid[std::min(arg_min + 1, gamma_grid.size() - 1)];

    // Three refinement rounds, each a 10x finer log-spaced local grid.
    for (int round = 0; round < 3; ++round) {
        const int points = 21;
        const double step = std::log(hi / lo) / (points - 1);
        int local_min = 0;
        std::vector<double> local(points), local_gap(points);
        for (int i = 0; i < points; ++i) {
            local[i] = lo * std::exp(step * i);
            local_gap[i] = gap_at(local[i]);
            if (local_gap[i] < best_gap) {
                best_gap = local_gap[i];
                best_gamma = local[i];
            }
            if (local_gap[i] < local_gap[local_min]) local_min = i;
        }
        lo = local[local_min > 0 ? local_min - 1 : 0];
        hi = local[std::min(local_min + 1, points - 1)];
    }
    scan.g_min = best_gap;
    scan.gamma_at_min = best_gamma;
    return scan;
}

static Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_dense(
    const SpikeProblem& problem, double gamma) {
    if (problem.n > 8)
        throw std::invalid_argument("dense thermal computation limited to n <= 8");
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
        full_hamiltonian(problem, gamma));
}

std::vector<double> exact_thermal_slice_marginal(const SpikeProblem& problem,
                                                 double beta, double gamma) {
    const auto solver = solve_dense(problem, gamma);
    const auto& ev = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    const std::size_t dim = std::size_t{1} << problem.n;
    // Shift by the ground energy for stable exponentials.
    const double e0 = ev[0];
    std::vector<double> marginal(dim, 0.0);
    double z = 0.0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        const double wk = std::exp(-beta * (ev[k] - e0));
        z += wk;
        for (std::size_t s = 0; s < dim; ++s)
            marginal[s] += wk * vecs(s, k) * vecs(s, k);
    }
    for (auto& m : marginal) m /= z;
    return marginal;
}

double exact_partition(const SpikeProblem& problem, double beta, double gamma) {
    const auto solver = solve_dense(problem, gamma);
    const auto& ev = solver.eigenvalues();
    double z = 0.0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) z += std::exp(-beta * ev[k]);
    return z;
}

double brute_force_trotter_partition(const SpikeProblem& problem, double beta,
                                     double gamma, int L) {
    const int n = problem.n;
    const int sites = n * L;
    if (sites > 20)
        throw std::invalid_argument("brute_force_trotter_partition: n*L > 20");
    if (L < 2) throw std::invalid_argument("brute_force_trotter_partition: L >= 2");
    const double J = coupling_strength(beta, gamma, L);
    const double site_weight = beta / L;
    const std::uint32_t slice_mask = (1u << n) - 1;

    double sum = 0.0;
    for (std::uint64_t config = 0; config < (std::uint64_t{1} << sites); ++config) {
        // Bit b of slice i (bit 1 <-> spin -1) lives at position i*n + b.
        double energy = 0.0;
        for (int i = 0; i < L; ++i) {
            const std::uint32_t slice = (config >> (i * n)) & slice_mask;
            const std::uint32_t next = (config >> (((i + 1) % L) * n)) & slice_mask;
            energy += site_weight *
                      objective_by_weight(problem, std::popcount(slice));
            // z z' = +1 on equal bits, -1 on differing bits.
            const int differing = std::popcount(slice ^ next);
            energy -= J * (n - 2 * differing);
        }
        sum += std::exp(-energy);
    }
    const double x = beta * gamma / L;
    const double log_prefactor = 0.5 * sites * std::log(0.5 * std::sinh(2.0 * x));
    return std::exp(log_prefactor) * sum;
}

}  // namespace sqa
