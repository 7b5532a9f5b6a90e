// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace nova {

// Deterministic helpers on top of std::mt19937_64. The engine's output
// sequence is pinned by the standard; the float conversions below are
// hand-rolled so results do not depend on the standard library's
// distribution implementations.

/// Uniform double in [0, 1) with 53 random bits.
inline double canonical_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_double(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * canonical_double(rng);
}

/// Uniform integer in [lo, hi] via rejection-free modulo (bias is
/// negligible for the small ranges used here and keeps the draw portable).
inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

/// Standard normal via Box-Muller.
inline double gaussian(std::mt19937_64& rng) {
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
    const double u2 = canonical_double(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace nova
