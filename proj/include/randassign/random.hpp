#pragma once

#include <cstdint>

namespace randassign {

namespace detail {

// 64-bit finalizer (murmur3 fmix64). Bijective, so distinct inputs stay distinct.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/// Derives an independent sub-seed from a base seed and a salt (replicate
/// index, matrix size, table row, ...). Same inputs, same output.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return detail::mix64(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 0x632be59bd9b4e019ULL)));
}

/// Deterministic replicate-indexed pseudo-random stream (xoshiro256++ core).
///
/// A stream is keyed by (seed, replicate_index): the pair is hashed into the
/// generator state, so two streams built from the same pair emit identical
/// sequences, and distinct replicate indices give statistically independent
/// streams. Reproducibility holds within this implementation; no
/// cross-implementation bit compatibility is promised.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t replicate_index = 0) {
        std::uint64_t key = derive_seed(seed, replicate_index);
        state_[0] = detail::splitmix64(key);
        state_[1] = detail::splitmix64(key);
        state_[2] = detail::splitmix64(key);
        state_[3] = detail::splitmix64(key);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next_u64() {
        std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
        std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl64(state_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1); never returns an endpoint, safe under log().
    double next_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t state_[4];
};

}  // namespace randassign
