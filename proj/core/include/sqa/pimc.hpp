#ifndef SQA_PIMC_HPP
#define SQA_PIMC_HPP

#include "sqa/lattice.hpp"
#include "sqa/problem.hpp"

namespace sqa {

// Imaginary-time coupling J = (1/2) log coth(beta*gamma/L), stable for
// arguments down to ~1e-16. Throws on gamma == 0 (J diverges; the
// annealing schedule never reaches 0 exactly).
double coupling_strength(double beta, double gamma, int L);

struct PimcParams {
    double beta;
    double gamma;
    int L;
    double coupling_J;

    static PimcParams make(double beta, double gamma, int L) {
        return PimcParams{beta, gamma, L, coupling_strength(beta, gamma, L)};
    }
};

// Effective classical energy beta*E_C of the Trotter lattice:
//   sum_i [ (beta/L) f(z_i) - J sum_j z_{i,j} z_{i+1,j} ],
// periodic in the slice index. The coupling term rewards alignment
// (ferromagnetic).
double effective_energy(const SpikeProblem& problem, const WorldlineLattice& lattice,
                        const PimcParams& params);

// beta*E_C change from flipping one spin; O(1) via the cached slice
// weight and the two imaginary-time bonds. Does not mutate the lattice.
double flip_delta(const SpikeProblem& problem, const WorldlineLattice& lattice,
                  const PimcParams& params, int slice, int bit);

}  // namespace sqa

#endif
