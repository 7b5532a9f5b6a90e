// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "nova/fit_direct.hpp"
#include "nova/random.hpp"
#include "nova/softmax.hpp"

using namespace nova;

namespace {

PiecewiseLinearFn exp_table() {
    return fit_direct(FunctionId::exp, 16, default_domain(FunctionId::exp), 4096);
}

PiecewiseLinearFn recip_table() {
    return fit_direct(FunctionId::reciprocal, 16, default_domain(FunctionId::reciprocal), 4096);
}

} // namespace

TEST_CASE("exact softmax is a probability vector") {
    const std::vector<double> row{1.0, 2.0, 3.0, -1.0};
    const std::vector<double> p = exact_softmax(row);
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    CHECK(sum == Catch::Approx(1.0));
    CHECK(*std::max_element(p.begin(), p.end()) == p[2]);
    for (double v : p) CHECK(v > 0.0);
}

TEST_CASE("reciprocal range reduction is exact across binades") {
    const PiecewiseLinearFn recip = recip_table();
    // Scaling by powers of two is lossless, so the error anywhere equals
    // the table's error at the reduced argument in [1, 2).
    for (const double s : {1.0, 1.5, 1.999, 2.0, 3.7, 64.0, 1000.0, 0.125, 0.03}) {
        const double approx = eval_reciprocal_reduced(recip, s);
        CHECK(std::abs(approx - 1.0 / s) <= 0.001 / s);
    }
    CHECK_THROWS_AS(eval_reciprocal_reduced(recip, 0.0), std::domain_error);
    CHECK_THROWS_AS(eval_reciprocal_reduced(recip, -1.0), std::domain_error);
}

TEST_CASE("approximate softmax rejects empty rows") {
    CHECK_THROWS_AS(approx_softmax({}, exp_table(), recip_table()), std::invalid_argument);
}

TEST_CASE("approximate softmax sums stay within two percent of one") {
    const PiecewiseLinearFn e = exp_table();
    const PiecewiseLinearFn r = recip_table();
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> row(64);
        for (double& x : row) x = uniform_double(rng, -8.0, 8.0);
        const std::vector<double> p = approx_softmax(row, e, r);
        const double sum = std::accumulate(p.begin(), p.end(), 0.0);
        CHECK(sum >= 0.98);
        CHECK(sum <= 1.02);
        for (double v : p) CHECK(v >= 0.0);
    }
}

TEST_CASE("approximate softmax preserves the argmax almost always") {
    const PiecewiseLinearFn e = exp_table();
    const PiecewiseLinearFn r = recip_table();
    std::mt19937_64 rng(22);
    int agree = 0;
    const int trials = 2000;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<double> row(64);
        for (double& x : row) x = gaussian(rng) * 3.0;
        const std::vector<double> approx = approx_softmax(row, e, r);
        const std::vector<double> exact = exact_softmax(row);
        const auto ai = std::max_element(approx.begin(), approx.end()) - approx.begin();
        const auto xi = std::max_element(exact.begin(), exact.end()) - exact.begin();
        agree += (ai == xi);
    }
    CHECK(agree >= trials * 99 / 100);
}

TEST_CASE("max subtraction makes the result shift invariant") {
    const PiecewiseLinearFn e = exp_table();
    const PiecewiseLinearFn r = recip_table();
    const std::vector<double> row{0.3, -1.2, 2.7, 0.0};
    std::vector<double> shifted = row;
    for (double& x : shifted) x += 100.0;
    const std::vector<double> a = approx_softmax(row, e, r);
    const std::vector<double> b = approx_softmax(shifted, e, r);
    for (std::size_t i = 0; i < row.size(); ++i)
        CHECK(a[i] == Catch::Approx(b[i]).margin(1e-12));
}
