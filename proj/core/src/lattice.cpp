#include "sqa/lattice.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sqa {

WorldlineLattice::WorldlineLattice(int n, int L)
    : n_(n), L_(L), spins_(static_cast<std::size_t>(n) * L, Spin{1}), weights_(L, 0) {
    if (n < 1) throw std::invalid_argument("WorldlineLattice: n must be >= 1");
    if (L < 2) throw std::invalid_argument("WorldlineLattice: L must be >= 2");
}

WorldlineLattice WorldlineLattice::uniform_plus(int n, int L) {
    return WorldlineLattice(n, L);
}

WorldlineLattice WorldlineLattice::random(int n, int L, RngStream& rng) {
    WorldlineLattice lat(n, L);
    for (auto& s : lat.spins_) s = (rng.next_u64() & 1) ? Spin{1} : Spin{-1};
    lat.recompute_weights();
    return lat;
}

void WorldlineLattice::check_indices(int slice, int bit) const {
    if (slice < 0 || slice >= L_) throw std::out_of_range("lattice: slice index");
    if (bit < 0 || bit >= n_) throw std::out_of_range("lattice: bit index");
}

void WorldlineLattice::recompute_weights() {
    for (int i = 0; i < L_; ++i) {
        int sum = 0;
        for (int j = 0; j < n_; ++j) sum += spins_[idx(i, j)];
        weights_[i] = (n_ - sum) / 2;
    }
}

void WorldlineLattice::apply_flip(int slice, int bit) {
    check_indices(slice, bit);
    Spin& s = spins_[idx(slice, bit)];
    weights_[slice] += (s == 1) ? 1 : -1;
    s = -s;
}

void WorldlineLattice::set_column(int qubit, const std::vector<Spin>& column) {
    check_indices(0, qubit);
    if (static_cast<int>(column.size()) != L_)
        throw std::invalid_argument("set_column: column length != L");
    for (int i = 0; i < L_; ++i) {
        Spin& s = spins_[idx(i, qubit)];
        if (s != column[i]) {
            weights_[i] += (s == 1) ? 1 : -1;
            s = column[i];
        }
    }
}

std::vector<Spin> WorldlineLattice::column(int qubit) const {
    check_indices(0, qubit);
    std::vector<Spin> col(L_);
    for (int i = 0; i < L_; ++i) col[i] = spins_[idx(i, qubit)];
    return col;
}

SpinSlice WorldlineLattice::slice(int i) const {
    check_indices(i, 0);
    return SpinSlice(spins_.begin() + idx(i, 0), spins_.begin() + idx(i + 1, 0));
}

bool WorldlineLattice::all_plus() const {
    for (int w : weights_)
        if (w != 0) return false;
    return true;
}

bool WorldlineLattice::any_slice_all_plus() const {
    for (int w : weights_)
        if (w == 0) return true;
    return false;
}

void WorldlineLattice::rotate_slices(int k) {
    k = ((k % L_) + L_) % L_;
    if (k == 0) return;
    std::vector<Spin> rotated(spins_.size());
    std::vector<int> rotated_w(L_);
    for (int i = 0; i < L_; ++i) {
        int dst = (i + k) % L_;
        for (int j = 0; j < n_; ++j) rotated[idx(dst, j)] = spins_[idx(i, j)];
        rotated_w[dst] = weights_[i];
    }
    spins_ = std::move(rotated);
    weights_ = std::move(rotated_w);
}

void WorldlineLattice::permute_columns(const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != n_)
        throw std::invalid_argument("permute_columns: permutation size != n");
    std::vector<Spin> permuted(spins_.size());
    for (int i = 0; i < L_; ++i)
        for (int j = 0; j < n_; ++j) permuted[idx(i, perm[j])] = spins_[idx(i, j)];
    spins_ = std::move(permuted);
}

void WorldlineLattice::save(std::ostream& out) const {
    out << n_ << ' ' << L_ << '\n';
    for (int i = 0; i < L_; ++i) {
        for (int j = 0; j < n_; ++j) out << (spins_[idx(i, j)] == 1 ? '0' : '1');
        out << '\n';
    }
}

WorldlineLattice WorldlineLattice::load(std::istream& in) {
    int n = 0, L = 0;
    if (!(in >> n >> L)) throw std::runtime_error("lattice load: bad header");
    WorldlineLattice lat(n, L);
    for (int i = 0; i < L; ++i) {
        std::string line;
        if (!(in >> line) || static_cast<int>(line.size()) != n)
            throw std::runtime_error("lattice load: bad row");
        for (int j = 0; j < n; ++j) {
            if (line[j] != '0' && line[j] != '1')
                throw std::runtime_error("lattice load: bad character");
            lat.spins_[lat.idx(i, j)] = (line[j] == '0') ? Spin{1} : Spin{-1};
        }
    }
    lat.recompute_weights();
    return lat;
}

void WorldlineLattice::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    save(out);
}

WorldlineLattice WorldlineLattice::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load(in);
}

}  // namespace sqa
