#pragma once

// SU(1,1) elements [[a, conj(b)], [b, conj(a)]] with |a|^2 - |b|^2 = 1.
//
// Compositions are never projected back onto the constraint surface; callers
// watch drift through constraint_residual().

#include <complex>
#include <span>

#include "nlft/cantor.hpp"

namespace nlft {

struct Su11 {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};

    static constexpr Su11 identity() noexcept { return {}; }

    // |a|^2 - |b|^2 - 1.
    double constraint_residual() const noexcept { return std::norm(a) - std::norm(b) - 1.0; }

    friend bool operator==(const Su11&, const Su11&) = default;
};

// Matrix product g * h.
inline Su11 compose(const Su11& g, const Su11& h) noexcept {
    // [[ag, cbg], [bg, cag]] * [[ah, cbh], [bh, cah]]; the first column is (a, b).
    return {g.a * h.a + std::conj(g.b) * h.b, g.b * h.a + std::conj(g.a) * h.b};
}

// Ordered product factors[0] * factors[1] * ... .
Su11 compose_all(std::span<const Su11> factors) noexcept;

// exp(h W) for W = [[0, conj(w)], [w, 0]]: the exact solution of G' = G W
// across one cell of width h with constant potential w.
Su11 cell_transfer(cplx w, double h);

// arsinh(t) for t >= 0, accurate for tiny t.
double arsinh(double t) noexcept;

// sqrt(ln|a|), evaluated as sqrt(log1p(|b|^2) / 2).
double size(const Su11& g) noexcept;

// ln|a| = log1p(|b|^2) / 2.
double log_abs_a(const Su11& g) noexcept;

// Largest singular value, |a| + |b|.
double spectral_norm(const Su11& g) noexcept;

}  // namespace nlft
