#pragma once

#include <cstdint>

namespace hecke {

// Counter-based generator: sample i of a stream is a pure function of
// (seed, i), so results are reproducible for any worker partition.
// Uses the splitmix64 finalizer.
inline std::uint64_t counter_mix(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform double in [0, 1).
inline double counter_uniform01(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(counter_mix(seed, index) >> 11) * 0x1.0p-53;
}

}  // namespace hecke
