#include "nlft/random.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nlft/errors.hpp"

namespace nlft {

double Rng::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string_view to_string(Regime r) noexcept {
    switch (r) {
        case Regime::case1: return "case1";
        case Regime::case2: return "case2";
        case Regime::case3: return "case3";
        case Regime::mixed: return "mixed";
    }
    return "unknown";
}

Regime parse_regime(std::string_view name) {
    for (auto r : {Regime::case1, Regime::case2, Regime::case3, Regime::mixed})
        if (name == to_string(r)) return r;
    throw InvalidArgument("unknown regime '" + std::string(name) + "' (expected case1|case2|case3|mixed)");
}

Su11 sample_su11(double r, Rng& rng) {
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    return {std::polar(std::sqrt(1.0 + r * r), phi), std::polar(r, theta)};
}

std::vector<Su11> sample_factors(unsigned d, Regime regime, double threshold, Rng& rng) {
    constexpr double kBig = 10.0;
    std::vector<double> radii(d);
    auto small = [&] { return rng.uniform_left_open(0.0, threshold); };
    auto big = [&] { return rng.uniform_left_open(threshold, kBig); };
    switch (regime) {
        case Regime::case1:
            for (auto& r : radii) r = small();
            break;
        case Regime::case2: {
            const auto pivot = rng.below(d);
            for (unsigned j = 0; j < d; ++j) radii[j] = j == pivot ? big() : small();
            break;
        }
        case Regime::case3: {
            // Partial Fisher-Yates picks which coordinates are large.
            const auto count = 2 + rng.below(d - 1);
            std::vector<unsigned> order(d);
            for (unsigned j = 0; j < d; ++j) order[j] = j;
            for (unsigned j = 0; j < count; ++j) std::swap(order[j], order[j + rng.below(d - j)]);
            std::vector<bool> is_big(d, false);
            for (unsigned j = 0; j < count; ++j) is_big[order[j]] = true;
            for (unsigned j = 0; j < d; ++j) radii[j] = is_big[j] ? big() : small();
            break;
        }
        case Regime::mixed: {
            const double lo = std::log(threshold * 1e-3), hi = std::log(kBig);
            for (auto& r : radii) r = std::exp(rng.uniform(lo, hi));
            break;
        }
    }
    std::vector<Su11> factors;
    factors.reserve(d);
    for (double r : radii) factors.push_back(sample_su11(r, rng));
    return factors;
}

StepFunction random_step_function(unsigned d, int cell_exponent, int support_exponent, double l2_norm, Rng& rng,
                                  bool real_valued) {
    if (support_exponent + cell_exponent < 0) throw InvalidArgument("support_exponent + cell_exponent must be nonnegative");
    const auto count = ipow(d, static_cast<unsigned>(support_exponent + cell_exponent));
    const double width = std::pow(static_cast<double>(d), -static_cast<double>(cell_exponent));
    std::vector<cplx> values(count);
    double energy = 0.0;
    for (auto& v : values) {
        v = real_valued ? cplx(rng.normal(), 0.0) : cplx(rng.normal(), rng.normal());
        energy += std::norm(v) * width;
    }
    const double s = energy > 0.0 ? l2_norm / std::sqrt(energy) : 0.0;
    for (auto& v : values) v *= s;
    return StepFunction(d, cell_exponent, support_exponent, std::move(values));
}

}  // namespace nlft
