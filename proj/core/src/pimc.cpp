#include "sqa/pimc.hpp"

#include <cmath>
#include <stdexcept>

namespace sqa {

double coupling_strength(double beta, double gamma, int L) {
    if (beta <= 0) throw std::invalid_argument("coupling_strength: beta must be > 0");
    if (L < 2) throw std::invalid_argument("coupling_strength: L must be >= 2");
    if (gamma <= 0)
        throw std::domain_error("coupling_strength: J diverges at gamma <= 0");
    const double x = beta * gamma / L;
    if (x < 1e-4) {
        // log coth x = -log x + x^2/3 + O(x^4)
        return 0.5 * (-std::log(x) + x * x / 3.0);
    }
    // (1/2) log coth x = atanh(e^{-2x}); decays cleanly for large x.
    return std::atanh(std::exp(-2.0 * x));
}

double effective_energy(const SpikeProblem& problem, const WorldlineLattice& lattice,
                        const PimcParams& params) {
    const int n = lattice.n();
    const int L = lattice.num_slices();
    if (n != problem.n || L != params.L)
        throw std::invalid_argument("effective_energy: dimension mismatch");
    const double site_weight = params.beta / L;
    const double J = params.coupling_J;
    double energy = 0.0;
    long bond_sum = 0;
    for (int i = 0; i < L; ++i) {
        energy += site_weight * objective_by_weight(problem, lattice.slice_weight(i));
        const int next = (i + 1 == L) ? 0 : i + 1;
        for (int j = 0; j < n; ++j)
            bond_sum += lattice.spin(i, j) * lattice.spin(next, j);
    }
    return energy - J * static_cast<double>(bond_sum);
}

double flip_delta(const SpikeProblem& problem, const WorldlineLattice& lattice,
                  const PimcParams& params, int slice, int bit) {
    const int n = lattice.n();
    const int L = lattice.num_slices();
    if (n != problem.n || L != params.L)
        throw std::invalid_argument("flip_delta: dimension mismatch");
    if (slice < 0 || slice >= L || bit < 0 || bit >= n)
        throw std::out_of_range("flip_delta: index out of range");
    const int s = lattice.spin(slice, bit);
    const int h = lattice.slice_weight(slice);
    const int h_new = (s == 1) ? h + 1 : h - 1;
    const double df =
        objective_by_weight(problem, h_new) - objective_by_weight(problem, h);
    const int prev = (slice == 0) ? L - 1 : slice - 1;
    const int next = (slice + 1 == L) ? 0 : slice + 1;
    const int bond = lattice.spin(prev, bit) + lattice.spin(next, bit);
    return (params.beta / L) * df + 2.0 * params.coupling_J * s * bond;
}

}  // namespace sqa
