#pragma once

// Power sums that stay finite for very large exponents (q ~ 1000 with entries
// ~ 1e-3 would underflow if evaluated naively).

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "nlft/errors.hpp"

namespace nlft {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Conjugate exponents 1 <= p <= 2, 1/p + 1/q = 1. q is +infinity iff p == 1.
class ConjugatePair {
public:
    explicit ConjugatePair(double p) : p_(p), q_(p == 1.0 ? kInfinity : p / (p - 1.0)) {
        if (!(p >= 1.0 && p <= 2.0)) throw InvalidArgument("exponent p must lie in [1, 2], got " + std::to_string(p));
    }

    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }
    bool q_infinite() const noexcept { return std::isinf(q_); }

private:
    double p_;
    double q_;
};

// (sum_j v_j^p)^(1/p) for v_j >= 0; p = infinity gives the max.
inline double lp_sum(std::span<const double> v, double p) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    if (m == 0.0 || std::isinf(p)) return m;
    double s = 0.0;
    for (double x : v) s += std::pow(x / m, p);
    return m * std::pow(s, 1.0 / p);
}

// (n^-1 sum_k v_k^q)^(1/q) for v_k >= 0; q = infinity gives the max.
inline double lq_mean(std::span<const double> v, double q) {
    if (v.empty()) return 0.0;
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    if (m == 0.0 || std::isinf(q)) return m;
    double s = 0.0;
    for (double x : v) s += std::pow(x / m, q);
    return m * std::pow(s / static_cast<double>(v.size()), 1.0 / q);
}

}  // namespace nlft
