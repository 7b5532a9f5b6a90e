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
#include "nova/errors.hpp"
#include "nova/pwl.hpp"
#include "nova/random.hpp"

namespace nova {

/// One-hidden-layer ReLU network with scalar input and linear output:
///   f(x) = output_bias + sum_i output_weights[i] * relu(hidden_weights[i] * x + hidden_biases[i])
/// The represented function is continuous and piecewise linear with at most
/// hidden_size kinks, one per unit at x = -hidden_biases[i] / hidden_weights[i].
struct MlpApproximator {
    std::vector<double> hidden_weights;
    std::vector<double> hidden_biases;
    std::vector<double> output_weights;
    double output_bias = 0.0;

    std::size_t hidden_size() const { return hidden_weights.size(); }

    void validate() const {
        const std::size_t h = hidden_weights.size();
        if (h < 1) throw std::invalid_argument("MlpApproximator: hidden_size must be >= 1");
        if (hidden_biases.size() != h || output_weights.size() != h)
            throw std::invalid_argument("MlpApproximator: parameter size mismatch");
        for (std::size_t i = 0; i < h; ++i)
            if (!std::isfinite(hidden_weights[i]) || !std::isfinite(hidden_biases[i]) ||
                !std::isfinite(output_weights[i]))
                throw std::invalid_argument("MlpApproximator: non-finite parameter");
        if (!std::isfinite(output_bias))
            throw std::invalid_argument("MlpApproximator: non-finite parameter");
    }
};

inline double mlp_eval(const MlpApproximator& m, double x) {
    double acc = m.output_bias;
    for (std::size_t i = 0; i < m.hidden_size(); ++i) {
        const double z = m.hidden_weights[i] * x + m.hidden_biases[i];
        if (z > 0.0) acc += m.output_weights[i] * z;
    }
    return acc;
}

struct MlpTrainConfig {
    long samples = 4096;
    long iterations = 2000;
    double learning_rate = 0.05;
    std::uint64_t seed = 1;
};

namespace detail {

/// Solve (A^T A + ridge I) beta = A^T y by Cholesky. A is n x p, row-major.
inline std::vector<double> ridge_least_squares(const std::vector<double>& a, std::size_t n,
                                               std::size_t p, const std::vector<double>& y,
                                               double ridge) {
    std::vector<double> ata(p * p, 0.0), aty(p, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const double* row = &a[r * p];
        for (std::size_t i = 0; i < p; ++i) {
            aty[i] += row[i] * y[r];
            for (std::size_t j = i; j < p; ++j)
                ata[i * p + j] += row[i] * row[j];
        }
    }
    for (std::size_t i = 0; i < p; ++i) {
        ata[i * p + i] += ridge;
        for (std::size_t j = 0; j < i; ++j)
            ata[i * p + j] = ata[j * p + i];
    }
    // Cholesky factorisation in place.
    std::vector<double>& l = ata;
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = l[i * p + j];
            for (std::size_t k = 0; k < j; ++k)
                s -= l[i * p + k] * l[j * p + k];
            if (i == j) {
                if (s <= 0.0) throw std::runtime_error("ridge_least_squares: matrix not positive definite");
                l[i * p + i] = std::sqrt(s);
            } else {
                l[i * p + j] = s / l[j * p + j];
            }
        }
    }
    std::vector<double> beta(p);
    for (std::size_t i = 0; i < p; ++i) {
        double s = aty[i];
        for (std::size_t k = 0; k < i; ++k)
            s -= l[i * p + k] * beta[k];
        beta[i] = s / l[i * p + i];
    }
    for (std::size_t ii = p; ii-- > 0;) {
        double s = beta[ii];
        for (std::size_t k = ii + 1; k < p; ++k)
            s -= l[k * p + ii] * beta[k];
        beta[ii] = s / l[ii * p + ii];
    }
    return beta;
}

/// Kink positions equidistributing the integral of sqrt(|f''|), the knot
/// density that minimises worst-case PWL error. Input samples are on a
/// uniform grid in [-1, 1]. The first knot is pinned just inside -1:
/// extraction clamps everything left of the first kink onto segment 1, so
/// a first kink away from the domain edge would discard the fit there.
/// The remaining count-1 knots sit at curvature quantiles i/count, the
/// interior boundaries of count equal-error segments. Returns an empty
/// vector when the target has no usable curvature (affine targets), in
/// which case kinks belong left of the domain so the network starts out
/// affine.
inline std::vector<double> curvature_knots(const std::vector<double>& ys, std::size_t count) {
    const std::size_t s = ys.size();
    std::vector<double> mass(s - 2);
    double total = 0.0;
    double ymag = 0.0;
    for (double y : ys) ymag = std::max(ymag, std::abs(y));
    for (std::size_t k = 1; k + 1 < s; ++k) {
        mass[k - 1] = std::sqrt(std::abs(ys[k + 1] - 2.0 * ys[k] + ys[k - 1]));
        total += mass[k - 1];
    }
    if (total <= 1e-7 * std::max(1.0, ymag)) return {};
    std::vector<double> knots(count);
    knots[0] = -1.0 + 1e-3;
    const double step = 2.0 / static_cast<double>(s - 1);
    double acc = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 1; i < count; ++i) {
        const double want = total * static_cast<double>(i) / static_cast<double>(count);
        while (k < mass.size() && acc + mass[k] < want)
            acc += mass[k++];
        knots[i] = std::max(knots[0] + step, -1.0 + step * static_cast<double>(k + 1));
    }
    return knots;
}

} // namespace detail

inline PiecewiseLinearFn extract_pwl(const MlpApproximator& m, Interval domain,
                                     FunctionId label = FunctionId::identity);

/// Train the two-layer MLP on a scalar target by full-batch gradient
/// descent with a fixed step, on a uniform sample grid. Input and output
/// are normalised internally so one learning rate serves every target;
/// returned parameters are in original coordinates. Hidden kinks start at
/// curvature-equidistributed positions (with a small seeded jitter) and the
/// output layer starts from an exact least-squares solve, so descent only
/// has to polish the fit. Deterministic given the seed.
inline MlpApproximator fit_mlp_fn(const std::function<double(double)>& target, int breakpoint_count,
                                  Interval domain, const MlpTrainConfig& cfg) {
    if (breakpoint_count < 1)
        throw std::invalid_argument("fit_mlp: breakpoint_count must be >= 1");
    if (domain.degenerate())
        throw std::invalid_argument("fit_mlp: degenerate domain");
    if (cfg.samples < 2 || cfg.iterations < 0 || !(cfg.learning_rate > 0.0))
        throw std::invalid_argument("fit_mlp: bad train config");

    const std::size_t h = static_cast<std::size_t>(breakpoint_count);
    const std::size_t s = static_cast<std::size_t>(cfg.samples);
    const double half = 0.5 * domain.width();
    const double mid = domain.mid();

    // Normalised samples: u in [-1, 1], t = (y - my) / sy.
    std::vector<double> us(s), ys(s);
    for (std::size_t k = 0; k < s; ++k) {
        us[k] = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(s - 1);
        ys[k] = target(mid + half * us[k]);
        if (!std::isfinite(ys[k]))
            throw std::invalid_argument("fit_mlp: target not finite over the domain");
    }
    double ylo = ys[0], yhi = ys[0];
    for (double y : ys) {
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
    }
    const double my = 0.5 * (ylo + yhi);
    const double sy = (yhi - ylo) > 0.0 ? 0.5 * (yhi - ylo) : 1.0;
    std::vector<double> ts(s);
    for (std::size_t k = 0; k < s; ++k)
        ts[k] = (ys[k] - my) / sy;

    std::mt19937_64 rng(cfg.seed);
    std::vector<double> w(h, 1.0), c(h), v(h), knots = detail::curvature_knots(ys, h);
    if (knots.empty()) {
        // Affine target: start all kinks left of the domain so every unit is
        // active everywhere and the initial network is already affine.
        for (std::size_t i = 0; i < h; ++i)
            knots.push_back(-1.02 - 0.02 * static_cast<double>(i));
    }
    for (std::size_t i = 0; i < h; ++i) {
        const double jitter = (canonical_double(rng) - 0.5) * (0.02 / static_cast<double>(h));
        c[i] = -std::max(knots[i] + jitter, -1.0 + 1e-4);
    }

    // Exact least-squares initialisation of the output layer.
    std::vector<double> features(s * (h + 1));
    for (std::size_t k = 0; k < s; ++k) {
        features[k * (h + 1)] = 1.0;
        for (std::size_t i = 0; i < h; ++i)
            features[k * (h + 1) + 1 + i] = std::max(0.0, w[i] * us[k] + c[i]);
    }
    const auto beta =
        detail::ridge_least_squares(features, s, h + 1, ts, 1e-9 * static_cast<double>(s));
    double v0 = beta[0];
    for (std::size_t i = 0; i < h; ++i)
        v[i] = beta[1 + i];

    // Full-batch gradient descent on all parameters, fixed step, squared
    // error. The deliverable is the extracted table, and descent can lower
    // the MSE while pushing a kink out of the domain (ruining the table),
    // so iterate selection scores the extracted PWL's max error on the
    // grid every few steps and keeps the best iterate seen.
    std::vector<double> bw = w, bc = c, bv = v;
    double bv0 = v0;
    double best_score = std::numeric_limits<double>::infinity();
    const auto score_candidate = [&](const std::vector<double>& cw, const std::vector<double>& cc,
                                     const std::vector<double>& cv, double cv0) {
        const MlpApproximator cand{cw, cc, cv, cv0};
        const PiecewiseLinearFn pwl = extract_pwl(cand, Interval{-1.0, 1.0}, FunctionId::identity);
        double worst = 0.0;
        for (std::size_t j = 0; j < s; ++j)
            worst = std::max(worst, std::abs(eval_pwl(pwl, us[j]) - ts[j]));
        if (worst < best_score) {
            best_score = worst;
            bw = cw;
            bc = cc;
            bv = cv;
            bv0 = cv0;
        }
    };
    constexpr long kScoreStride = 50;
    std::vector<double> gw(h), gc(h), gv(h);
    const double lr = cfg.learning_rate;
    for (long it = 0; it <= cfg.iterations; ++it) {
        std::fill(gw.begin(), gw.end(), 0.0);
        std::fill(gc.begin(), gc.end(), 0.0);
        std::fill(gv.begin(), gv.end(), 0.0);
        double gv0 = 0.0;
        double loss = 0.0;
        for (std::size_t k = 0; k < s; ++k) {
            double pred = v0;
            for (std::size_t i = 0; i < h; ++i) {
                const double z = w[i] * us[k] + c[i];
                if (z > 0.0) pred += v[i] * z;
            }
            const double e = pred - ts[k];
            loss += e * e;
            gv0 += e;
            for (std::size_t i = 0; i < h; ++i) {
                const double z = w[i] * us[k] + c[i];
                if (z > 0.0) {
                    gv[i] += e * z;
                    gc[i] += e * v[i];
                    gw[i] += e * v[i] * us[k];
                }
            }
        }
        loss /= static_cast<double>(s);
        if (!std::isfinite(loss))
            throw TrainingDivergence("fit_mlp: non-finite loss at iteration " + std::to_string(it) +
                                     " (seed " + std::to_string(cfg.seed) + ")");
        if (it % kScoreStride == 0 || it == cfg.iterations)
            score_candidate(w, c, v, v0);
        if (it == cfg.iterations) break;
        const double g = 2.0 * lr / static_cast<double>(s);
        v0 -= g * gv0;
        for (std::size_t i = 0; i < h; ++i) {
            v[i] -= g * gv[i];
            c[i] -= g * gc[i];
            w[i] -= g * gw[i];
        }
    }

    // Back to original coordinates: z = w u + c with u = (x - mid) / half.
    MlpApproximator m;
    m.hidden_weights.resize(h);
    m.hidden_biases.resize(h);
    m.output_weights.resize(h);
    for (std::size_t i = 0; i < h; ++i) {
        m.hidden_weights[i] = bw[i] / half;
        m.hidden_biases[i] = bc[i] - bw[i] * mid / half;
        m.output_weights[i] = bv[i] * sy;
    }
    m.output_bias = bv0 * sy + my;
    m.validate();
    return m;
}

inline MlpApproximator fit_mlp(FunctionId id, int breakpoint_count, Interval domain,
                               const MlpTrainConfig& cfg) {
    return fit_mlp_fn([id](double x) { return eval_exact(id, x); }, breakpoint_count, domain, cfg);
}

/// Convert a trained MLP into the PWL the mapper loads. Kinks inside the
/// domain, sorted and deduplicated, become the breakpoints; each segment's
/// slope and bias sum the contributions of the units active there. The
/// result equals the MLP exactly for x >= d_1 (left of d_1 the clamp rule
/// reuses segment 1, discarding the MLP's own left tail). An MLP with no
/// in-domain kink degenerates to a single segment anchored at domain.lo.
inline PiecewiseLinearFn extract_pwl(const MlpApproximator& m, Interval domain,
                                     FunctionId label) {
    m.validate();
    if (domain.degenerate())
        throw std::invalid_argument("extract_pwl: degenerate domain");

    std::vector<double> kinks;
    for (std::size_t i = 0; i < m.hidden_size(); ++i) {
        if (m.hidden_weights[i] == 0.0) continue; // constant contribution, no kink
        const double k = -m.hidden_biases[i] / m.hidden_weights[i];
        if (k >= domain.lo && k < domain.hi) kinks.push_back(k);
    }
    std::sort(kinks.begin(), kinks.end());
    const double eps = 1e-9 * std::max({1.0, std::abs(domain.lo), std::abs(domain.hi)});
    std::vector<double> dedup;
    for (double k : kinks)
        if (dedup.empty() || k - dedup.back() > eps) dedup.push_back(k);
    if (dedup.empty()) dedup.push_back(domain.lo);

    PiecewiseLinearFn pwl;
    pwl.function_id = label;
    pwl.domain = domain;
    pwl.breakpoints = dedup;
    const std::size_t b = dedup.size();
    for (std::size_t i = 0; i < b; ++i) {
        const double right = (i + 1 < b) ? dedup[i + 1] : std::max(domain.hi, dedup[i] + 1.0);
        const double x_ref = 0.5 * (dedup[i] + right);
        double slope = 0.0, bias = m.output_bias;
        for (std::size_t j = 0; j < m.hidden_size(); ++j) {
            if (m.hidden_weights[j] * x_ref + m.hidden_biases[j] > 0.0) {
                slope += m.output_weights[j] * m.hidden_weights[j];
                bias += m.output_weights[j] * m.hidden_biases[j];
            }
        }
        pwl.slopes.push_back(slope);
        pwl.biases.push_back(bias);
    }
    pwl.validate();
    return pwl;
}

} // namespace nova
