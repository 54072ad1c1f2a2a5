#ifndef SQA_LATTICE_HPP
#define SQA_LATTICE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sqa/problem.hpp"
#include "sqa/rng.hpp"

namespace sqa {

// L x n array of +-1 spins: L Trotter slices along the (periodic)
// imaginary-time direction. Per-slice Hamming weights are cached and
// kept in sync by apply_flip.
class WorldlineLattice {
public:
    WorldlineLattice(int n, int L);

    // Every spin +1 (all-zeros bit strings).
    static WorldlineLattice uniform_plus(int n, int L);
    // Each spin independently +-1 with probability 1/2.
    static WorldlineLattice random(int n, int L, RngStream& rng);

    int n() const { return n_; }
    int num_slices() const { return L_; }

    Spin spin(int slice, int bit) const { return spins_[idx(slice, bit)]; }
    int slice_weight(int slice) const { return weights_[slice]; }
    const std::vector<int>& slice_weights() const { return weights_; }

    // Negates one spin and adjusts the cached weight.
    void apply_flip(int slice, int bit);

    // Overwrites a full qubit column; weights are re-adjusted per slice.
    void set_column(int qubit, const std::vector<Spin>& column);
    std::vector<Spin> column(int qubit) const;

    SpinSlice slice(int i) const;

    bool all_plus() const;
    // True if at least one slice is the all-zeros bit string.
    bool any_slice_all_plus() const;

    // Rotates slice order by k (slice i -> slice (i+k) mod L).
    void rotate_slices(int k);
    // Applies the same column permutation to every slice.
    void permute_columns(const std::vector<int>& perm);

    // Checkpoint format: first line "n L", then L lines of n chars in
    // {0,1} (bit 0 <-> spin +1).
    void save(std::ostream& out) const;
    static WorldlineLattice load(std::istream& in);
    void save_file(const std::string& path) const;
    static WorldlineLattice load_file(const std::string& path);

    bool operator==(const WorldlineLattice& other) const = default;

    // Raw slice-major storage, for the hot sweep kernel.
    Spin* data() { return spins_.data(); }
    const Spin* data() const { return spins_.data(); }
    int* weights_data() { return weights_.data(); }

private:
    std::size_t idx(int slice, int bit) const {
        return static_cast<std::size_t>(slice) * n_ + bit;
    }
    void check_indices(int slice, int bit) const;
    void recompute_weights();

    int n_;
    int L_;
    std::vector<Spin> spins_;
    std::vector<int> weights_;
};

}  // namespace sqa

#endif
