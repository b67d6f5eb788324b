#pragma once

#include <cstdint>
#include <random>

namespace onsager::detail {

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform53(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection, platform independent.
inline std::uint64_t uniform_index(std::mt19937_64& gen, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return x % n;
}

} // namespace onsager::detail
