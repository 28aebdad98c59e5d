#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "sisi/model.hpp"

namespace sisi::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stable per-trial / per-cell sub-seed derivation.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

// Canonical double in [0, 1). std::uniform_real_distribution is
// implementation-defined, which would break byte-identical reports.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

// Uniform barycentric sample on the standard 3-simplex.
inline SimplexPoint uniform_simplex(std::mt19937_64& g) {
    double e[4];
    double s;
    do {
        s = 0.0;
        for (double& ei : e) {
            ei = -std::log1p(-uniform01(g));
            s += ei;
        }
    } while (!(s > 0.0));
    return {e[0] / s, e[1] / s, e[2] / s, e[3] / s};
}

} // namespace sisi::rng
