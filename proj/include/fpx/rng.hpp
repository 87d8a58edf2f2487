#pragma once

#include <cstdint>
#include <random>

namespace fpx {

// All stochastic code uses mt19937_64 whose raw output is fully specified by
// the standard, so streams are reproducible across platforms and compilers.
using Rng = std::mt19937_64;

// 53-bit uniform in [0,1). Distributions from <random> are not bit-specified
// across standard libraries; this mapping is.
inline double uniform01(Rng& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Deterministic substream id from up to three words (master seed, n,
// replicate index). Replication seeds everywhere derive from this.
inline std::uint64_t hash64(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = a;
    std::uint64_t h = splitmix64(s);
    s = h ^ b;
    h = splitmix64(s);
    s = h ^ c;
    h = splitmix64(s);
    return h;
}

} // namespace fpx
