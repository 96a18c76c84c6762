#include "nlft/bellman.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlft/errors.hpp"

namespace nlft {

namespace {

double upper_branch(const BellmanFunction& bf, double t) {
    return bf.scale_constant * std::sqrt(1.0 + arsinh(t));
}

double threshold_gap(double t, double c) { return t * std::exp(-t) - c * std::sqrt(1.0 + arsinh(t)); }

void check_factors(std::span<const Su11> factors) {
    if (factors.size() < 2) throw InvalidArgument("need at least d = 2 factors");
    for (const auto& g : factors)
        if (!(std::abs(g.constraint_residual()) <= 1e-9))
            throw InvalidArgument("factor violates |a|^2 - |b|^2 = 1 (residual " +
                                  std::to_string(g.constraint_residual()) + ")");
}

}  // namespace

double BellmanFunction::operator()(double t) const {
    if (!(t >= 0.0)) throw InvalidArgument("beta is defined for t >= 0, got " + std::to_string(t));
    if (t <= threshold) return t * std::exp(-t);
    return upper_branch(*this, t);
}

double BellmanFunction::residual() const { return std::abs(threshold_gap(threshold, scale_constant)); }

BellmanFunction solve_threshold(unsigned d) {
    if (d < 2) throw InvalidArgument("radix must be at least 2, got " + std::to_string(d));
    const double c = std::pow(2.0 * d, -5.0);
    double t = solve_threshold_equation<double>(d);
    // Settle on the neighbouring double with the smallest residual.
    double best = t;
    for (int dir : {-1, 1}) {
        double probe = t;
        for (int i = 0; i < 4; ++i) {
            probe = std::nextafter(probe, dir < 0 ? 0.0 : 1.0);
            if (std::abs(threshold_gap(probe, c)) < std::abs(threshold_gap(best, c))) best = probe;
        }
    }
    return BellmanFunction{d, best, c};
}

double beta(const BellmanFunction& bf, double t) { return bf(t); }

SwapInstance swap_product(std::span<const Su11> factors) {
    check_factors(factors);
    const auto d = static_cast<unsigned>(factors.size());
    const auto twiddle = unit_roots(d);
    SwapInstance inst{d, {factors.begin(), factors.end()}, std::vector<Su11>(d)};
    for (unsigned k = 0; k < d; ++k) {
        Su11 acc = Su11::identity();
        for (unsigned j = 0; j < d; ++j)
            acc = compose(acc, Su11{factors[j].a, factors[j].b * twiddle[(j * k) % d]});
        inst.outputs[k] = acc;
    }
    return inst;
}

double SwapInstance::residual() const {
    const auto fresh = swap_product(factors);
    double r = 0.0;
    for (std::size_t k = 0; k < outputs.size(); ++k)
        r = std::max({r, std::abs(outputs[k].a - fresh.outputs[k].a), std::abs(outputs[k].b - fresh.outputs[k].b)});
    return r;
}

LinearPart linear_part(std::span<const Su11> factors) {
    check_factors(factors);
    const std::size_t d = factors.size();
    LinearPart out{std::vector<cplx>(d), {}};
    // prefix[j] = conj(a_0 ... a_{j-1}), suffix[j] = a_{j+1} ... a_{d-1}
    std::vector<cplx> prefix(d + 1, 1.0), suffix(d + 1, 1.0);
    for (std::size_t j = 0; j < d; ++j) prefix[j + 1] = prefix[j] * std::conj(factors[j].a);
    for (std::size_t j = d; j-- > 0;) suffix[j] = suffix[j + 1] * factors[j].a;
    for (std::size_t j = 0; j < d; ++j) out.b_prime[j] = prefix[j] * factors[j].b * suffix[j + 1];
    out.B_prime = zd_fourier(out.b_prime);
    return out;
}

std::vector<cplx> pivot_variant(std::span<const Su11> factors, std::size_t pivot) {
    check_factors(factors);
    const std::size_t d = factors.size();
    if (pivot >= d) throw InvalidArgument("pivot index out of range");
    // Unit factors off the pivot, the full a_m on it.
    std::vector<cplx> u(d);
    for (std::size_t j = 0; j < d; ++j)
        u[j] = j == pivot ? factors[j].a : factors[j].a / std::abs(factors[j].a);
    std::vector<cplx> prefix(d + 1, 1.0), suffix(d + 1, 1.0);
    for (std::size_t j = 0; j < d; ++j) prefix[j + 1] = prefix[j] * std::conj(u[j]);
    for (std::size_t j = d; j-- > 0;) suffix[j] = suffix[j + 1] * u[j];
    std::vector<cplx> z(d);
    for (std::size_t j = 0; j < d; ++j) z[j] = prefix[j] * factors[j].b * suffix[j + 1];
    return zd_fourier(z);
}

std::pair<std::size_t, std::size_t> pivot_indices(std::span<const Su11> factors) {
    if (factors.size() < 2) throw InvalidArgument("need at least two factors");
    std::size_t m = 0;
    for (std::size_t j = 1; j < factors.size(); ++j)
        if (std::abs(factors[j].b) > std::abs(factors[m].b)) m = j;
    std::size_t second = m == 0 ? 1 : 0;
    for (std::size_t j = 0; j < factors.size(); ++j)
        if (j != m && std::abs(factors[j].b) > std::abs(factors[second].b)) second = j;
    return {m, second};
}

std::vector<cplx> zd_fourier(std::span<const cplx> z) {
    const auto d = static_cast<unsigned>(z.size());
    if (d == 0) return {};
    const auto twiddle = d >= 2 ? unit_roots(d) : std::vector<cplx>{1.0};
    std::vector<cplx> out(d);
    for (unsigned k = 0; k < d; ++k) {
        cplx s = 0.0;
        for (unsigned j = 0; j < d; ++j) s += z[j] * twiddle[(static_cast<u64>(j) * k) % d];
        out[k] = s;
    }
    return out;
}

}  // namespace nlft
