// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nova {

/// Q-format descriptor for the on-wire words. The default Q5.10 signed
/// 16-bit matches the 257-bit link width (8 x 2 x 16 + 1 tag bit).
struct FixedPointFormat {
    int total_bits = 16;
    int frac_bits = 10;
    bool is_signed = true;

    void validate() const {
        if (frac_bits < 0 || frac_bits >= total_bits || total_bits > 32)
            throw std::invalid_argument("FixedPointFormat: need 0 <= frac_bits < total_bits <= 32, got Q" +
                                        std::to_string(total_bits - frac_bits) + "." + std::to_string(frac_bits));
    }

    std::int64_t min_word() const {
        return is_signed ? -(std::int64_t{1} << (total_bits - 1)) : 0;
    }
    std::int64_t max_word() const {
        return is_signed ? (std::int64_t{1} << (total_bits - 1)) - 1
                         : (std::int64_t{1} << total_bits) - 1;
    }
    double scale() const { return std::ldexp(1.0, frac_bits); }

    bool operator==(const FixedPointFormat&) const = default;
};

/// Round-to-nearest-even of x * 2^frac_bits, saturating at the
/// representable range. Total over doubles: NaN maps to 0, infinities
/// saturate.
inline std::int32_t quantize(double x, const FixedPointFormat& fmt) {
    if (std::isnan(x)) return 0;
    const double scaled = x * fmt.scale();
    const std::int64_t lo = fmt.min_word();
    const std::int64_t hi = fmt.max_word();
    if (scaled >= static_cast<double>(hi)) return static_cast<std::int32_t>(hi);
    if (scaled <= static_cast<double>(lo)) return static_cast<std::int32_t>(lo);
    // Default FP rounding mode is to-nearest, ties-to-even.
    return static_cast<std::int32_t>(std::llrint(scaled));
}

inline double dequantize(std::int32_t word, const FixedPointFormat& fmt) {
    return static_cast<double>(word) / fmt.scale();
}

namespace detail {

/// Arithmetic shift right by frac bits with round-to-nearest-even.
inline std::int64_t round_shift_even(std::int64_t value, int frac_bits) {
    if (frac_bits == 0) return value;
    const std::int64_t q = value >> frac_bits; // floor
    const std::int64_t rem = value - (q << frac_bits);
    const std::int64_t half = std::int64_t{1} << (frac_bits - 1);
    if (rem > half) return q + 1;
    if (rem < half) return q;
    return q + (q & 1); // tie: round to even
}

inline std::int32_t saturate(std::int64_t v, const FixedPointFormat& fmt) {
    if (v > fmt.max_word()) return static_cast<std::int32_t>(fmt.max_word());
    if (v < fmt.min_word()) return static_cast<std::int32_t>(fmt.min_word());
    return static_cast<std::int32_t>(v);
}

} // namespace detail

/// Fixed-point multiply-accumulate: slope * x rounded back to the format's
/// fraction width, plus bias, saturating. This is the single arithmetic
/// definition shared by the reference evaluator and both simulators, so
/// bit-equality between them checks routing and lookup, not rounding.
inline std::int32_t fixed_mac(std::int32_t slope_word, std::int32_t x_word, std::int32_t bias_word,
                              const FixedPointFormat& fmt) {
    const std::int64_t product = std::int64_t{slope_word} * std::int64_t{x_word};
    const std::int64_t scaled = detail::round_shift_even(product, fmt.frac_bits);
    return detail::saturate(scaled + bias_word, fmt);
}

} // namespace nova
