#pragma once

#include <cstdint>
#include <random>

namespace entnet {

// Uniform double in [0,1) from the top 53 bits of the engine output.
// std::uniform_real_distribution is implementation-defined, so seeded runs
// would not be bit-identical across standard libraries; this mapping is.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

}  // namespace entnet
