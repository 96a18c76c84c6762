#include "nlft/su11.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nlft/errors.hpp"

namespace nlft {

Su11 compose_all(std::span<const Su11> factors) noexcept {
    Su11 acc = Su11::identity();
    for (const auto& g : factors) acc = compose(acc, g);
    return acc;
}

Su11 cell_transfer(cplx w, double h) {
    if (!(h > 0.0)) throw InvalidArgument("cell width must be positive, got " + std::to_string(h));
    const double r = std::abs(w);
    if (r == 0.0) return Su11::identity();
    const double s = h * r;
    if (!(s < 700.0)) throw InputTooLarge("cell transfer argument h|w| = " + std::to_string(s) + " exceeds 700");
    return {cplx(std::cosh(s), 0.0), (w / r) * std::sinh(s)};
}

double arsinh(double t) noexcept {
    if (t > 1e150) return std::log(t) + std::numbers::ln2;
    return std::log1p(t + t * t / (1.0 + std::sqrt(1.0 + t * t)));
}

double log_abs_a(const Su11& g) noexcept { return 0.5 * std::log1p(std::norm(g.b)); }

double size(const Su11& g) noexcept { return std::sqrt(log_abs_a(g)); }

double spectral_norm(const Su11& g) noexcept { return std::abs(g.a) + std::abs(g.b); }

}  // namespace nlft
