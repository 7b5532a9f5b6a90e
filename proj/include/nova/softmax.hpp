// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "nova/activation.hpp"
#include "nova/pwl.hpp"

namespace nova {

/// Reciprocal of a positive value via a PWL fitted only on [1, 2):
/// s = m * 2^e with m in [1, 2), so 1/s = recip(m) * 2^-e. The scaling is
/// exact in binary floating point, so all approximation error comes from
/// the PWL on the reduced domain.
inline double eval_reciprocal_reduced(const PiecewiseLinearFn& recip, double s) {
    if (!(s > 0.0))
        throw std::domain_error("eval_reciprocal_reduced: input must be positive");
    int e = 0;
    double m = std::frexp(s, &e); // m in [0.5, 1)
    m *= 2.0;
    --e; // now m in [1, 2), s = m * 2^e
    return std::ldexp(eval_pwl(recip, m), -e);
}

/// Softmax over one row using the two-PWL decomposition: subtract the row
/// max (so all exp inputs fall in the exp PWL's left-bounded domain), map
/// through the exp PWL with a clamp at zero, then scale by the approximate
/// reciprocal of the sum. Matches what the broadcast fabric computes when
/// both tables are loaded.
inline std::vector<double> approx_softmax(const std::vector<double>& row,
                                          const PiecewiseLinearFn& exp_pwl,
                                          const PiecewiseLinearFn& recip_pwl) {
    if (row.empty())
        throw std::invalid_argument("approx_softmax: empty input row");
    const double mx = *std::max_element(row.begin(), row.end());
    std::vector<double> y(row.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        y[i] = std::max(0.0, eval_pwl(exp_pwl, row[i] - mx)); // exp never goes negative
        sum += y[i];
    }
    if (!(sum > 0.0))
        throw std::domain_error("approx_softmax: approximate exponentials sum to zero");
    const double inv = eval_reciprocal_reduced(recip_pwl, sum);
    for (double& v : y) v *= inv;
    return y;
}

inline std::vector<double> exact_softmax(const std::vector<double>& row) {
    if (row.empty())
        throw std::invalid_argument("exact_softmax: empty input row");
    const double mx = *std::max_element(row.begin(), row.end());
    std::vector<double> y(row.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        y[i] = std::exp(row[i] - mx);
        sum += y[i];
    }
    for (double& v : y) v /= sum;
    return y;
}

} // namespace nova
