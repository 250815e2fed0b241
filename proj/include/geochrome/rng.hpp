#pragma once

#include <cstdint>

namespace geochrome {

// Identifies one reproducible randomness stream. The pair
// (master_seed, stream_index) fixes every random draw of a trial;
// distinct stream indices give statistically independent streams.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

// 64-bit avalanche mixer (splitmix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic splitmix64 generator. Used instead of <random> engines and
// distributions so that streams are bit-identical across platforms and
// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t raw_state) : state_(raw_state) {}

    // Derives the state from an avalanche mix of the seed pair. `salt`
    // separates independent sub-streams of the same trial (e.g. sampling
    // vs. solver tie-breaking).
    explicit Rng(const SeedSpec& seed, std::uint64_t salt = 0)
        : state_(mix64(mix64(seed.master_seed) ^
                       mix64(seed.stream_index + 0x632be59bd9b4e019ULL * (salt + 1)))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound), bias-free. bound must be positive.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t v = next_u64();
            if (v >= threshold) return v % bound;
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace geochrome
