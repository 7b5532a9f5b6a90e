// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nova {

/// Non-linear functions the approximator pipeline supports.
enum class FunctionId {
    exp,
    gelu,
    tanh,
    sigmoid,
    reciprocal,
    identity,
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return x >= lo && x <= hi; }
    bool degenerate() const { return !(lo < hi); }
    bool operator==(const Interval&) const = default;
};

inline std::string function_name(FunctionId id) {
    switch (id) {
    case FunctionId::exp: return "exp";
    case FunctionId::gelu: return "gelu";
    case FunctionId::tanh: return "tanh";
    case FunctionId::sigmoid: return "sigmoid";
    case FunctionId::reciprocal: return "reciprocal";
    case FunctionId::identity: return "identity";
    }
    throw std::invalid_argument("function_name: bad FunctionId");
}

inline FunctionId parse_function(std::string_view name) {
    if (name == "exp") return FunctionId::exp;
    if (name == "gelu") return FunctionId::gelu;
    if (name == "tanh") return FunctionId::tanh;
    if (name == "sigmoid") return FunctionId::sigmoid;
    if (name == "reciprocal") return FunctionId::reciprocal;
    if (name == "identity") return FunctionId::identity;
    throw std::invalid_argument("unknown function '" + std::string(name) +
                                "' (expected exp, gelu, tanh, sigmoid, reciprocal or identity)");
}

/// Double-precision reference value of the function at x.
/// reciprocal(0) raises std::domain_error.
inline double eval_exact(FunctionId id, double x) {
    switch (id) {
    case FunctionId::exp:
        return std::exp(x);
    case FunctionId::gelu:
        return 0.5 * x * (1.0 + std::erf(x * M_SQRT1_2));
    case FunctionId::tanh:
        return std::tanh(x);
    case FunctionId::sigmoid:
        return 1.0 / (1.0 + std::exp(-x));
    case FunctionId::reciprocal:
        if (x == 0.0) throw std::domain_error("reciprocal undefined at x = 0");
        return 1.0 / x;
    case FunctionId::identity:
        return x;
    }
    throw std::invalid_argument("eval_exact: bad FunctionId");
}

/// Fitting ranges where attention workloads evaluate each function.
/// exp is fit on the max-subtracted side; reciprocal on [1, 2) with
/// power-of-two range reduction applied by the caller.
inline Interval default_domain(FunctionId id) {
    switch (id) {
    case FunctionId::exp: return {-8.0, 0.0};
    case FunctionId::gelu: return {-4.0, 4.0};
    case FunctionId::tanh: return {-6.0, 6.0};
    case FunctionId::sigmoid: return {-6.0, 6.0};
    case FunctionId::reciprocal: return {1.0, 2.0};
    case FunctionId::identity: return {-1.0, 1.0};
    }
    throw std::invalid_argument("default_domain: bad FunctionId");
}

} // namespace nova
