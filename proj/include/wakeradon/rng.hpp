#pragma once

#include <cmath>
#include <cstdint>

#include "wakeradon/types.hpp"

namespace wakeradon {

/// Counter-based deterministic random numbers. Every draw is a pure function
/// of (seed, stream, index), so fields of any size can be generated in
/// parallel, in any order, with bit-identical results.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t h = splitmix64(seed ^ 0x2545f4914f6cdd1dULL);
    h = splitmix64(h ^ stream);
    return splitmix64(h ^ index);
}

/// Uniform in [0, 1), 53-bit mantissa. Never returns exactly 0.
inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const std::uint64_t bits = mix(seed, stream, index) >> 11;
    const double u = static_cast<double>(bits) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
}

/// Standard normal via Box-Muller on two decorrelated uniforms.
inline double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const double u1 = uniform(seed, stream * 2 + 1, index);
    const double u2 = uniform(seed, stream * 2 + 2, index);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

/// Unit-mean gamma with integer shape `looks` (sum of exponentials).
inline double gamma_unit_mean(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                              int looks) {
    double acc = 0.0;
    for (int k = 0; k < looks; ++k)
        acc -= std::log(uniform(seed, stream * 64 + 3 + k, index));
    return acc / looks;
}

}  // namespace rng
}  // namespace wakeradon
