#ifndef SQA_ORACLE_HPP
#define SQA_ORACLE_HPP

#include <Eigen/Dense>
#include <vector>

#include "sqa/problem.hpp"

namespace sqa {

// Transverse-field Hamiltonian H = H_P + Gamma * H_B over the full 2^n
// basis: diagonal entries f(z), entries -Gamma between states at Hamming
// distance 1. Guarded at n <= 12; larger n belongs in the symmetric sector.
Eigen::MatrixXd full_hamiltonian(const SpikeProblem& problem, double gamma);

// Restriction to the permutation-symmetric sector, indexed by Hamming
// weight: (n+1)x(n+1) tridiagonal with diagonal f(h) and off-diagonal
// -Gamma * sqrt((h+1)(n-h)).
struct TridiagonalHamiltonian {
    Eigen::VectorXd diagonal;     // size n+1
    Eigen::VectorXd subdiagonal;  // size n
};

TridiagonalHamiltonian symmetric_hamiltonian(const SpikeProblem& problem, double gamma);

// Two lowest eigenvalues of the symmetric-sector Hamiltonian.
std::pair<double, double> symmetric_lowest_two(const SpikeProblem& problem, double gamma);

struct SpectralScan {
    int n = 0;
    std::vector<double> gamma_grid;
    std::vector<double> gaps;  // E_1 - E_0 per grid point
    double g_min = 0.0;
    double gamma_at_min = 0.0;
};

std::vector<double> default_gamma_grid(int points = 64, double lo = 1e-3, double hi = 1e2);

// Symmetric-sector gap over the grid, then three local refinement rounds
// (10x finer each) around the coarse minimum.
SpectralScan gap_scan(const SpikeProblem& problem, const std::vector<double>& gamma_grid);

// Diagonal of rho = e^{-beta H} / tr(e^{-beta H}) over the 2^n basis; the
// distribution a single Trotter slice approaches as L -> infinity. n <= 8.
std::vector<double> exact_thermal_slice_marginal(const SpikeProblem& problem, double beta,
                                                 double gamma);

// tr(e^{-beta H}) by dense diagonalization. n <= 8.
double exact_partition(const SpikeProblem& problem, double beta, double gamma);

// Sum of e^{-beta E_C} over all 2^(nL) worldline configurations, scaled by
// the Suzuki-Trotter prefactor (sinh(2 beta Gamma / L)/2)^(nL/2) so the
// value approximates tr(e^{-beta H}). Guarded at n*L <= 20.
double brute_force_trotter_partition(const SpikeProblem& problem, double beta,
                                     double gamma, int L);

}  // namespace sqa

#endif
