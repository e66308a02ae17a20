#ifndef DODTEST_RNG_HPP
#define DODTEST_RNG_HPP

#include <cstdint>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace dod {

using Rng = std::mt19937_64;

// Deterministic child-seed derivation (splitmix64 finalizer). Replications
// seeded via mix_seed(base, index) are order-independent, so replication
// loops can run in any order or in parallel without changing results.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t s1, std::uint64_t s2) {
    return mix_seed(mix_seed(base, s1), s2);
}

// Uniform on [0,1). 53-bit resolution, identical across platforms for a
// given engine state (avoids implementation-defined std distributions).
inline double uniform01(Rng& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform on [lo,hi).
inline double uniform(Rng& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

// Standard normal via Box-Muller (no cached spare; keeps draws stateless).
inline double normal01(Rng& g) {
    const double u1 = 1.0 - uniform01(g);  // (0,1], log-safe
    const double u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

// Uniform index in {0,...,n-1}.
inline std::size_t uniform_index(Rng& g, std::size_t n) {
    std::size_t i = static_cast<std::size_t>(uniform01(g) * static_cast<double>(n));
    return i < n ? i : n - 1;
}

// k distinct indices from {0,...,n-1} (partial Fisher-Yates), in draw order.
std::vector<std::size_t> sample_without_replacement(Rng& g, std::size_t n, std::size_t k);

}  // namespace dod

#endif
