#pragma once

// The Bellman function beta_d and the d-point swapping construction.
//
// beta_d(t) = t e^-t below the threshold t_d and (2d)^-5 sqrt(1 + arsinh t)
// above it, where t_d in [0, 1] solves t e^-t = (2d)^-5 sqrt(1 + arsinh t).
// The swapping inequality compares beta_d of the b-entries of d factors
// against beta_d of the b-entries of their d twiddled ordered products.

#include <cmath>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "nlft/cantor.hpp"
#include "nlft/su11.hpp"

namespace nlft {

namespace detail {

template <class Real>
Real threshold_residual(const Real& t, const Real& c) {
    using std::asinh, std::exp, std::sqrt;
    return t * exp(-t) - c * sqrt(Real(1) + asinh(t));
}

template <class Real>
Real threshold_slope(const Real& t, const Real& c) {
    using std::asinh, std::exp, std::sqrt;
    return (Real(1) - t) * exp(-t) - c / (Real(2) * sqrt(Real(1) + asinh(t)) * sqrt(Real(1) + t * t));
}

}  // namespace detail

// Root of t e^-t = (2d)^-5 sqrt(1 + arsinh t) on [0, 1] at the precision of
// Real: bisection to the bracket's resolution, then damped Newton steps.
// Works for any floating type with ADL exp/sqrt/asinh (e.g. boost
// multiprecision).
template <class Real>
Real solve_threshold_equation(unsigned d) {
    using std::abs, std::pow;
    const Real c = pow(Real(2 * d), -5);
    Real lo = 0, hi = 1;
    const int iterations = std::numeric_limits<Real>::digits + 80;
    for (int i = 0; i < iterations; ++i) {
        const Real mid = (lo + hi) / 2;
        if (mid == lo || mid == hi) break;
        (detail::threshold_residual(mid, c) < 0 ? lo : hi) = mid;
    }
    Real t = (lo + hi) / 2;
    for (int i = 0; i < 6; ++i) {
        const Real g = detail::threshold_residual(t, c);
        Real step = g / detail::threshold_slope(t, c);
        Real next = t - step;
        for (int k = 0; k < 30 && abs(detail::threshold_residual(next, c)) > abs(g); ++k) {
            step /= 2;
            next = t - step;
        }
        if (abs(detail::threshold_residual(next, c)) > abs(g)) break;
        t = next;
    }
    return t;
}

struct BellmanFunction {
    unsigned d = 2;
    double threshold = 0.0;       // t_d
    double scale_constant = 0.0;  // (2d)^-5

    // beta_d(t); throws InvalidArgument for t < 0.
    double operator()(double t) const;

    // |t_d e^-t_d - (2d)^-5 sqrt(1 + arsinh t_d)|.
    double residual() const;
};

BellmanFunction solve_threshold(unsigned d);

double beta(const BellmanFunction& bf, double t);

// d factors (a_j, b_j) and the outputs (A_k, B_k) of the twiddled products.
struct SwapInstance {
    unsigned d = 0;
    std::vector<Su11> factors;
    std::vector<Su11> outputs;

    // Max entry deviation between the stored outputs and a fresh
    // evaluation of the products.
    double residual() const;
};

// [[A_k, conj B_k], [B_k, conj A_k]] = prod_j [[a_j, conj(b_j) w^-jk], [b_j w^jk, conj a_j]],
// w = e^(2 pi i / d), ascending in j.
SwapInstance swap_product(std::span<const Su11> factors);

struct LinearPart {
    std::vector<cplx> b_prime;  // conj(a_0..a_{j-1}) b_j a_{j+1}..a_{d-1}
    std::vector<cplx> B_prime;  // sum_j b'_j w^jk
};

LinearPart linear_part(std::span<const Su11> factors);

// Pivoted linear part B''_k: off-pivot a_j replaced by c_j = a_j / |a_j|.
std::vector<cplx> pivot_variant(std::span<const Su11> factors, std::size_t pivot);

// Indices of the largest and second largest |b_j|; ties go to the smaller index.
std::pair<std::size_t, std::size_t> pivot_indices(std::span<const Su11> factors);

// Z_k = sum_j z_j e^(2 pi i j k / d), unnormalized.
std::vector<cplx> zd_fourier(std::span<const cplx> z);

}  // namespace nlft
