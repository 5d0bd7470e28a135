#pragma once

#include <cstdint>
#include <random>

#include "circq/types.hpp"

namespace circq {

/// Uniform double in [lo, hi). Built from raw engine bits rather than
/// std::uniform_real_distribution so sequences match across standard
/// libraries.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

inline Vector4 uniform_vector(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    Vector4 v;
    for (double& c : v.c) c = uniform(rng, lo, hi);
    return v;
}

}  // namespace circq
