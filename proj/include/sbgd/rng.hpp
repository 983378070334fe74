#pragma once

#include <cstdint>
#include <random>

namespace sbgd {

/// Uniform double in [0,1) from the top 53 bits of a 64-bit draw. Bypasses
/// std::uniform_real_distribution so streams are identical across standard
/// library implementations; seeded runs must be bit-reproducible.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + uniform01(rng) * (hi - lo);
}

} // namespace sbgd
