// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nova/activation.hpp"
#include "nova/fixed_point.hpp"

namespace nova {

/// Piecewise-linear approximation payload. B breakpoints d_1 < ... < d_B
/// define B segments: segment i covers [d_i, d_{i+1}) with d_{B+1} = +inf,
/// and inputs left of d_1 clamp to segment 1. Segment i applies
/// slopes[i-1] * x + biases[i-1].
struct PiecewiseLinearFn {
    FunctionId function_id = FunctionId::identity;
    Interval domain;
    std::vector<double> breakpoints;
    std::vector<double> slopes;
    std::vector<double> biases;

    std::size_t segment_count() const { return breakpoints.size(); }

    void validate() const {
        const std::size_t b = breakpoints.size();
        if (b < 1)
            throw std::invalid_argument("PiecewiseLinearFn: need at least one segment");
        if (slopes.size() != b || biases.size() != b)
            throw std::invalid_argument("PiecewiseLinearFn: breakpoints/slopes/biases size mismatch");
        for (std::size_t i = 0; i + 1 < b; ++i)
            if (!(breakpoints[i] < breakpoints[i + 1]))
                throw std::invalid_argument("PiecewiseLinearFn: breakpoints must be strictly increasing");
        for (std::size_t i = 0; i < b; ++i)
            if (!std::isfinite(breakpoints[i]) || !std::isfinite(slopes[i]) || !std::isfinite(biases[i]))
                throw std::invalid_argument("PiecewiseLinearFn: non-finite coefficient");
        if (domain.degenerate())
            throw std::invalid_argument("PiecewiseLinearFn: degenerate domain");
    }
};

/// Single hardware-mappable instance limit: more segments would need more
/// than the one on-wire tag bit (see noc.hpp).
inline constexpr std::size_t kMaxHardwareSegments = 16;

/// Segment index in 1..B for input x: the comparator bank counts how many
/// breakpoints are <= x, clamping to 1 left of d_1.
inline int lookup_address(const PiecewiseLinearFn& pwl, double x) {
    const auto& d = pwl.breakpoints;
    const auto it = std::upper_bound(d.begin(), d.end(), x);
    const auto count = static_cast<int>(it - d.begin());
    return std::max(1, count);
}

inline double eval_pwl(const PiecewiseLinearFn& pwl, double x) {
    const int i = lookup_address(pwl, x) - 1;
    return pwl.slopes[static_cast<std::size_t>(i)] * x + pwl.biases[static_cast<std::size_t>(i)];
}

/// PWL with all coefficients and breakpoints quantized to one format;
/// what the mapper actually loads into the hardware.
struct QuantizedPwl {
    FunctionId function_id = FunctionId::identity;
    Interval domain;
    FixedPointFormat fmt;
    std::vector<std::int32_t> breakpoints;
    std::vector<std::int32_t> slopes;
    std::vector<std::int32_t> biases;

    std::size_t segment_count() const { return breakpoints.size(); }
};

inline QuantizedPwl quantize_pwl(const PiecewiseLinearFn& pwl, const FixedPointFormat& fmt) {
    pwl.validate();
    fmt.validate();
    QuantizedPwl q;
    q.function_id = pwl.function_id;
    q.domain = pwl.domain;
    q.fmt = fmt;
    q.breakpoints.reserve(pwl.breakpoints.size());
    q.slopes.reserve(pwl.slopes.size());
    q.biases.reserve(pwl.biases.size());
    for (double d : pwl.breakpoints) q.breakpoints.push_back(quantize(d, fmt));
    for (double a : pwl.slopes) q.slopes.push_back(quantize(a, fmt));
    for (double b : pwl.biases) q.biases.push_back(quantize(b, fmt));
    return q;
}

/// Comparator semantics on quantized words. Quantization may collapse
/// neighbouring breakpoints onto the same word; counting comparators that
/// fire keeps the address well defined in that case.
inline int lookup_address_words(const std::vector<std::int32_t>& breakpoint_words, std::int32_t x_word) {
    int count = 0;
    for (std::int32_t d : breakpoint_words)
        if (d <= x_word) ++count;
    return std::max(1, count);
}

/// Reference fixed-point evaluation: comparator address on quantized words,
/// then one fixed-point MAC. Both simulators must reproduce this bit for bit.
inline std::int32_t eval_pwl_fixed(const QuantizedPwl& q, std::int32_t x_word) {
    const int i = lookup_address_words(q.breakpoints, x_word) - 1;
    return fixed_mac(q.slopes[static_cast<std::size_t>(i)], x_word,
                     q.biases[static_cast<std::size_t>(i)], q.fmt);
}

inline std::int32_t eval_quantized(const PiecewiseLinearFn& pwl, double x, const FixedPointFormat& fmt) {
    return eval_pwl_fixed(quantize_pwl(pwl, fmt), quantize(x, fmt));
}

struct ApproxErrorReport {
    double max_abs_error = 0.0;
    double mean_abs_error = 0.0;
    double rmse = 0.0;
    long samples = 0;
    Interval domain;
};

/// Error metrics of a PWL against an arbitrary reference on a uniform grid.
inline ApproxErrorReport error_metrics_fn(const PiecewiseLinearFn& pwl,
                                          const std::function<double(double)>& reference,
                                          Interval domain, long samples) {
    if (samples < 2) throw std::invalid_argument("error_metrics: need samples >= 2");
    pwl.validate();
    ApproxErrorReport r;
    r.samples = samples;
    r.domain = domain;
    const double step = domain.width() / static_cast<double>(samples - 1);
    double sum_abs = 0.0;
    double sum_sq = 0.0;
    for (long k = 0; k < samples; ++k) {
        const double x = domain.lo + step * static_cast<double>(k);
        const double err = std::abs(eval_pwl(pwl, x) - reference(x));
        r.max_abs_error = std::max(r.max_abs_error, err);
        sum_abs += err;
        sum_sq += err * err;
    }
    r.mean_abs_error = sum_abs / static_cast<double>(samples);
    r.rmse = std::sqrt(sum_sq / static_cast<double>(samples));
    return r;
}

inline ApproxErrorReport error_metrics(const PiecewiseLinearFn& pwl, FunctionId id,
                                       Interval domain, long samples) {
    return error_metrics_fn(pwl, [id](double x) { return eval_exact(id, x); }, domain, samples);
}

} // namespace nova
