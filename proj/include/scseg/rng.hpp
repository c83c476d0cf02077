#pragma once

#include <array>
#include <cstdint>

namespace scseg {

// xoshiro256** seeded through splitmix64. Self-contained so that sampling —
// and therefore every mask — is bit-identical across platforms and standard
// library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = split_mix(x);
    }

    std::uint64_t next() {
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

    // Uniform integer in [0, bound); bound must be nonzero. Rejection keeps
    // the distribution exact.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r = next();
        while (r >= limit) r = next();
        return r % bound;
    }

    // Uniform double in [0, 1), 53 significant bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

private:
    static std::uint64_t rotl(std::uint64_t v, int s) { return (v << s) | (v >> (64 - s)); }

    static std::uint64_t split_mix(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::array<std::uint64_t, 4> state_{};
};

// Generator for one block, derived from the run seed and the block's grid
// position. Blocks can be processed in any order, or in parallel, without
// changing results.
inline Rng block_rng(std::uint64_t seed, int block_row, int block_col) {
    const auto mix = [](std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    std::uint64_t x = seed;
    x = mix(x + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(block_row) + 1));
    x = mix(x + 0xD1B54A32D192ED03ULL * (static_cast<std::uint64_t>(block_col) + 1));
    return Rng(x);
}

}  // namespace scseg
