#ifndef INVFORGE_RNG_HPP
#define INVFORGE_RNG_HPP

#include <cstdint>

namespace invforge {

/// splitmix64: 64-bit state s; each draw does s += 0x9E3779B97F4A7C15 and
/// returns a mixed copy of s. Fixed here so witnesses replay across
/// platforms and language ports.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform-enough draw in [0, n); n is tiny relative to 2^64 here.
    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

} // namespace invforge

#endif
