#ifndef SQA_RNG_HPP
#define SQA_RNG_HPP

#include <cmath>
#include <cstdint>

namespace sqa {

// SplitMix64 finalizer; used both to seed the generator state and as the
// documented (master_seed, stream_id) -> state mixing function.
inline std::uint64_t splitmix64_next(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256** with splitmix64 seeding. Platform-independent output,
// period 2^256 - 1. Distinct trials use distinct stream_ids; the stream
// seed is splitmix64 applied to master_seed after absorbing stream_id.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}

    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : master_seed_(master_seed), stream_id_(stream_id) {
        std::uint64_t s = master_seed ^ (0xD2B74407B1CE6E93ULL * (stream_id + 1));
        for (auto& w : state_) w = splitmix64_next(s);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound) via Lemire's multiply-shift rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_[4];
};

}  // namespace sqa

#endif
