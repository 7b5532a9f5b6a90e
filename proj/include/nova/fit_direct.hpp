// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nova/pwl.hpp"

namespace nova {

namespace detail {

struct PrefixSums {
    std::vector<double> n, sx, sy, sxx, sxy;

    explicit PrefixSums(const std::vector<double>& xs, const std::vector<double>& ys) {
        const std::size_t s = xs.size();
        n.assign(s + 1, 0.0);
        sx.assign(s + 1, 0.0);
        sy.assign(s + 1, 0.0);
        sxx.assign(s + 1, 0.0);
        sxy.assign(s + 1, 0.0);
        for (std::size_t k = 0; k < s; ++k) {
            n[k + 1] = n[k] + 1.0;
            sx[k + 1] = sx[k] + xs[k];
            sy[k + 1] = sy[k] + ys[k];
            sxx[k + 1] = sxx[k] + xs[k] * xs[k];
            sxy[k + 1] = sxy[k] + xs[k] * ys[k];
        }
    }

    /// Least-squares line over samples [i, j).
    std::pair<double, double> line(std::size_t i, std::size_t j) const {
        const double cnt = n[j] - n[i];
        const double mx = (sx[j] - sx[i]) / cnt;
        const double my = (sy[j] - sy[i]) / cnt;
        const double cxx = (sxx[j] - sxx[i]) - cnt * mx * mx;
        const double cxy = (sxy[j] - sxy[i]) - cnt * mx * my;
        if (cnt < 2.0 || cxx <= 0.0) return {0.0, my};
        const double slope = cxy / cxx;
        return {slope, my - slope * mx};
    }
};

} // namespace detail

/// Brute-force PWL fitter: dense uniform sampling, per-segment least
/// squares, and breakpoint placement by dynamic programming over a
/// candidate cut grid, minimising the maximum absolute error over the
/// samples. Deterministic. The result may be discontinuous at breakpoints;
/// it serves as the error baseline the MLP fitter is measured against.
inline PiecewiseLinearFn fit_direct_fn(const std::function<double(double)>& target, FunctionId label,
                                       int breakpoint_count, Interval domain, long samples) {
    if (breakpoint_count < 1)
        throw std::invalid_argument("fit_direct: breakpoint_count must be >= 1");
    if (domain.degenerate())
        throw std::invalid_argument("fit_direct: degenerate domain");
    if (samples < 10L * breakpoint_count)
        throw std::invalid_argument("fit_direct: need samples >= 10 * breakpoint_count");

    const std::size_t s = static_cast<std::size_t>(samples);
    std::vector<double> xs(s), ys(s);
    const double step = domain.width() / static_cast<double>(samples - 1);
    for (std::size_t k = 0; k < s; ++k) {
        xs[k] = domain.lo + step * static_cast<double>(k);
        ys[k] = target(xs[k]);
    }

    // Candidate cut positions: at most ~512 evenly spaced sample indices,
    // always including both ends. Cut c means "segment boundary before
    // sample index c"; a segment spans samples [c_prev, c_next).
    const std::size_t want = std::min<std::size_t>(s, 512);
    std::vector<std::size_t> cuts;
    cuts.reserve(want + 1);
    for (std::size_t j = 0; j <= want; ++j)
        cuts.push_back(j * s / want);
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const std::size_t m = cuts.size() - 1; // number of candidate intervals

    const detail::PrefixSums ps(xs, ys);
    const auto segment_error = [&](std::size_t ci, std::size_t cj) {
        const std::size_t i = cuts[ci], j = cuts[cj];
        const auto [a, b] = ps.line(i, j);
        double worst = 0.0;
        for (std::size_t k = i; k < j; ++k)
            worst = std::max(worst, std::abs(a * xs[k] + b - ys[k]));
        return worst;
    };

    const std::size_t segs = static_cast<std::size_t>(breakpoint_count);
    const double inf = std::numeric_limits<double>::infinity();

    // cost[i * (m+1) + j]: max error of one segment over cut interval (i, j].
    std::vector<double> cost((m + 1) * (m + 1), inf);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j <= m; ++j)
            cost[i * (m + 1) + j] = segment_error(i, j);

    std::vector<double> best((segs + 1) * (m + 1), inf);
    std::vector<std::size_t> from((segs + 1) * (m + 1), 0);
    for (std::size_t j = 1; j <= m; ++j)
        best[1 * (m + 1) + j] = cost[j];
    for (std::size_t k = 2; k <= segs; ++k) {
        for (std::size_t j = k; j <= m; ++j) {
            double bv = inf;
            std::size_t bi = 0;
            for (std::size_t i = k - 1; i < j; ++i) {
                const double v = std::max(best[(k - 1) * (m + 1) + i], cost[i * (m + 1) + j]);
                if (v < bv) {
                    bv = v;
                    bi = i;
                }
            }
            best[k * (m + 1) + j] = bv;
            from[k * (m + 1) + j] = bi;
        }
    }

    // Fewer candidate intervals than requested segments can only happen for
    // tiny sample counts; the precondition (samples >= 10B) rules it out.
    const std::size_t used = std::min(segs, m);
    std::vector<std::size_t> bounds(used + 1);
    bounds[used] = m;
    for (std::size_t k = used; k >= 1; --k)
        bounds[k - 1] = (k == 1) ? 0 : from[k * (m + 1) + bounds[k]];

    PiecewiseLinearFn pwl;
    pwl.function_id = label;
    pwl.domain = domain;
    for (std::size_t k = 0; k < used; ++k) {
        const std::size_t i = cuts[bounds[k]], j = cuts[bounds[k + 1]];
        const auto [a, b] = ps.line(i, j);
        pwl.breakpoints.push_back(xs[i]);
        pwl.slopes.push_back(a);
        pwl.biases.push_back(b);
    }
    pwl.validate();
    return pwl;
}

inline PiecewiseLinearFn fit_direct(FunctionId id, int breakpoint_count, Interval domain, long samples) {
    return fit_direct_fn([id](double x) { return eval_exact(id, x); }, id, breakpoint_count, domain,
                         samples);
}

} // namespace nova
