#pragma once

// Slow reference implementations used to check the library. None of them
// calls into the code under test except for plain data types.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

inline Mat2 identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

inline Mat2 mul(const Mat2& x, const Mat2& y) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return r;
}

inline Mat2 su11(cplx a, cplx b) { return {{{a, std::conj(b)}, {b, std::conj(a)}}}; }

// Digit of x = num * d^-scale at position n, by integer division.
inline unsigned digit(std::uint64_t num, unsigned scale, unsigned d, int n) {
    const int shift = n + static_cast<int>(scale);
    if (shift < 0) return 0;
    for (int i = 0; i < shift; ++i) {
        num /= d;
        if (num == 0) return 0;
    }
    return static_cast<unsigned>(num % d);
}

// exp(2 pi i / d * sum_n x_n xi_{-1-n}) over positions [-40, 40].
inline cplx character(unsigned d, std::uint64_t xn, unsigned xs, std::uint64_t yn, unsigned ys) {
    long long s = 0;
    for (int n = -40; n <= 40; ++n) s += static_cast<long long>(digit(xn, xs, d, n)) * digit(yn, ys, d, -1 - n);
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(s % d) / d;
    return std::polar(1.0, phase);
}

// Largest singular value of a general 2x2 matrix from the eigenvalues of M^H M.
inline double largest_singular_value(const Mat2& m) {
    const double p = std::norm(m[0][0]) + std::norm(m[1][0]);
    const double q = std::norm(m[0][1]) + std::norm(m[1][1]);
    const cplx r = std::conj(m[0][0]) * m[0][1] + std::conj(m[1][0]) * m[1][1];
    const double tr = p + q;
    const double det = p * q - std::norm(r);
    return std::sqrt((tr + std::sqrt(std::max(0.0, tr * tr - 4.0 * det))) / 2.0);
}

// Classical RK4 for G' = G W, W = [[0, conj w], [w, 0]], over [0, h].
inline Mat2 integrate_cell(cplx w, double h, int steps) {
    const Mat2 W = {{{0.0, std::conj(w)}, {w, 0.0}}};
    auto rhs = [&](const Mat2& g) { return mul(g, W); };
    auto axpy = [](const Mat2& g, const Mat2& k, double s) {
        Mat2 r = g;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r[i][j] += s * k[i][j];
        return r;
    };
    Mat2 g = identity();
    const double dt = h / steps;
    for (int s = 0; s < steps; ++s) {
        const Mat2 k1 = rhs(g);
        const Mat2 k2 = rhs(axpy(g, k1, dt / 2));
        const Mat2 k3 = rhs(axpy(g, k2, dt / 2));
        const Mat2 k4 = rhs(axpy(g, k3, dt));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g[i][j] += dt / 6 * (k1[i][j] + 2.0 * k2[i][j] + 2.0 * k3[i][j] + k4[i][j]);
    }
    return g;
}

// Closed form exp(h W) by power series, independent of cosh/sinh.
inline Mat2 expm_cell(cplx w, double h) {
    const Mat2 W = {{{0.0, h * std::conj(w)}, {h * w, 0.0}}};
    Mat2 term = identity(), sum = identity();
    for (int n = 1; n < 60; ++n) {
        term = mul(term, W);
        for (auto& row : term)
            for (auto& v : row) v /= n;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) sum[i][j] += term[i][j];
    }
    return sum;
}

// Lower-left entry of prod_j [[a_j, conj(b_j) w^-jk], [b_j w^jk, conj a_j]]
// by enumerating the 2^(d-1) index paths from row 1 to column 0.
inline cplx swap_b_by_paths(const std::vector<cplx>& a, const std::vector<cplx>& b, unsigned k) {
    const unsigned d = static_cast<unsigned>(a.size());
    std::vector<Mat2> m(d);
    for (unsigned j = 0; j < d; ++j) {
        const cplx tw = std::polar(1.0, 2.0 * std::numbers::pi * ((j * k) % d) / d);
        m[j] = {{{a[j], std::conj(b[j]) * std::conj(tw)}, {b[j] * tw, std::conj(a[j])}}};
    }
    cplx total = 0.0;
    for (unsigned mask = 0; mask < (1u << (d - 1)); ++mask) {
        cplx term = 1.0;
        unsigned row = 1;
        for (unsigned j = 0; j < d; ++j) {
            const unsigned col = j + 1 < d ? (mask >> j) & 1u : 0u;
            term *= m[j][row][col];
            row = col;
        }
        total += term;
    }
    return total;
}

// Unnormalised DFT on Z_d by direct summation.
inline std::vector<cplx> dft(const std::vector<cplx>& z) {
    const std::size_t d = z.size();
    std::vector<cplx> out(d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t j = 0; j < d; ++j)
            out[k] += z[j] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / d);
    return out;
}

inline double max_entry_diff(cplx a1, cplx b1, cplx a2, cplx b2) {
    return std::max(std::abs(a1 - a2), std::abs(b1 - b2));
}

}  // namespace oracle
