#ifndef SQA_DYNAMICS_HPP
#define SQA_DYNAMICS_HPP

#include <cstdint>
#include <vector>

#include "sqa/pimc.hpp"
#include "sqa/rng.hpp"

namespace sqa {

struct SweepReport {
    std::int64_t attempted = 0;
    std::int64_t accepted = 0;
    double final_energy = 0.0;
};

// Accept with probability min{1, e^{-delta}} where delta is the beta*E_C
// change. Consumes one uniform variate when delta > 0 and none otherwise.
bool metropolis_accept(double delta_beta_E, RngStream& rng);

// Single-site Metropolis updates against the effective energy. Acceptance
// probabilities are tabulated per (slice weight, flip direction, bond
// alignment), so the hot loop does no exp calls. Tables depend on gamma
// through J; call set_params when the schedule advances.
class MetropolisSweeper {
public:
    MetropolisSweeper(const SpikeProblem& problem, const PimcParams& params);

    void set_params(const PimcParams& params);
    const PimcParams& params() const { return params_; }

    // One systematic sweep: all n*L sites in slice-major order
    // (slice 0 bits 0..n-1, then slice 1, ...). current_energy is the
    // beta*E_C of the lattice on entry; the report carries it forward.
    SweepReport sweep(WorldlineLattice& lattice, RngStream& rng,
                      double current_energy = 0.0) const;

    // n*L proposals at uniformly random sites; the per-step kernel
    // satisfies detailed balance.
    SweepReport random_site_sweep(WorldlineLattice& lattice, RngStream& rng,
                                  double current_energy = 0.0) const;

private:
    struct Entry {
        double prob;   // min{1, e^{-delta}}; 2.0 marks delta <= 0
        double delta;  // beta*E_C change if accepted
    };
    // Indexed [h * 6 + dir * 3 + bond_case]; dir 0: spin +1 flipping to -1
    // (weight h -> h+1), dir 1: the reverse. bond_case = (s*(s_prev+s_next)+2)/2.
    std::vector<Entry> table_;
    const Entry& entry(int h, int dir, int bond_case) const {
        return table_[static_cast<std::size_t>(h) * 6 + dir * 3 + bond_case];
    }
    void rebuild_table();
    bool propose(WorldlineLattice& lattice, int slice, int bit, RngStream& rng,
                 double& energy) const;

    SpikeProblem problem_;
    PimcParams params_;
};

// Redraws the full imaginary-time trajectory of one qubit from its exact
// conditional distribution (periodic 1D Ising chain, transfer-matrix
// forward pass with per-slice normalization, backward sampling). Heat
// bath: the result is always accepted.
void worldline_resample(const SpikeProblem& problem, WorldlineLattice& lattice,
                        const PimcParams& params, int qubit, RngStream& rng);

}  // namespace sqa

#endif
