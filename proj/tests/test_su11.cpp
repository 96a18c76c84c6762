#include "doctest.h"

#include <random>

#include "nlft/errors.hpp"
#include "nlft/random.hpp"
#include "nlft/su11.hpp"
#include "oracles.hpp"

using namespace nlft;

namespace {

double entry_error(const Su11& g, const oracle::Mat2& m) {
    return std::max({std::abs(g.a - m[0][0]), std::abs(g.b - m[1][0]), std::abs(std::conj(g.b) - m[0][1]),
                     std::abs(std::conj(g.a) - m[1][1])});
}

}  // namespace

TEST_CASE("compose examples") {
    const Su11 g{{1.2, 0.3}, {0.5, -0.4}};
    CHECK(compose(g, Su11::identity()) == g);
    CHECK(compose(Su11::identity(), g) == g);
    for (double s : {0.1, 0.7, 2.0})
        for (double t : {0.3, 1.1}) {
            const auto r = compose({std::cosh(s), std::sinh(s)}, {std::cosh(t), std::sinh(t)});
            CHECK(r.a.real() == doctest::Approx(std::cosh(s + t)).epsilon(1e-14));
            CHECK(r.b.real() == doctest::Approx(std::sinh(s + t)).epsilon(1e-14));
        }
}

TEST_CASE("compose matches 2x2 matrix product") {
    Rng rng(1);
    for (int t = 0; t < 500; ++t) {
        const Su11 g = sample_su11(rng.uniform(0, 5), rng);
        const Su11 h = sample_su11(rng.uniform(0, 5), rng);
        const auto m = oracle::mul(oracle::su11(g.a, g.b), oracle::su11(h.a, h.b));
        CHECK(entry_error(compose(g, h), m) < 1e-12 * (1 + std::abs(m[0][0])));
        CHECK(std::abs(compose(g, h).constraint_residual()) < 1e-12 * std::norm(m[0][0]));
    }
}

TEST_CASE("compose_all is the ascending product") {
    Rng rng(2);
    std::vector<Su11> chain;
    oracle::Mat2 m = oracle::identity();
    for (int j = 0; j < 20; ++j) {
        chain.push_back(sample_su11(rng.uniform(0, 0.5), rng));
        m = oracle::mul(m, oracle::su11(chain.back().a, chain.back().b));
    }
    CHECK(entry_error(compose_all(chain), m) < 1e-11);
    CHECK(compose_all(std::span<const Su11>{}) == Su11::identity());
}

TEST_CASE("cell_transfer") {
    CHECK(cell_transfer(0.0, 0.5) == Su11::identity());
    const auto g = cell_transfer(1.0, 1.0);
    CHECK(g.a.real() == doctest::Approx(1.5430806348152437).epsilon(1e-15));
    CHECK(g.b.real() == doctest::Approx(1.1752011936438014).epsilon(1e-15));
    const auto gi = cell_transfer({0.0, 1.0}, 1.0);
    CHECK(std::abs(gi.a - cplx(std::cosh(1.0), 0)) < 1e-15);
    CHECK(std::abs(gi.b - cplx(0, std::sinh(1.0))) < 1e-15);
    CHECK_THROWS_AS(cell_transfer(1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(cell_transfer(800.0, 1.0), InputTooLarge);

    Rng rng(3);
    for (int t = 0; t < 40; ++t) {
        const cplx w(rng.uniform(-3, 3), rng.uniform(-3, 3));
        const double h = rng.uniform(0.01, 1.0);
        const auto got = cell_transfer(w, h);
        const auto rk = oracle::integrate_cell(w, h, 2000);
        const auto series = oracle::expm_cell(w, h);
        CHECK(entry_error(got, rk) < 1e-9 * std::abs(got.a));
        CHECK(entry_error(got, series) < 1e-12 * std::abs(got.a));
    }
}

TEST_CASE("size, log_abs_a and arsinh") {
    CHECK(size(Su11::identity()) == 0.0);
    CHECK(size({std::cosh(1.0), std::sinh(1.0)}) == doctest::Approx(std::sqrt(std::log(std::cosh(1.0)))).epsilon(1e-14));
    CHECK(size({std::cosh(1.0), std::sinh(1.0)}) == doctest::Approx(0.6586).epsilon(1e-4));

    Rng rng(4);
    for (int t = 0; t < 300; ++t) {
        const auto g = sample_su11(std::exp(rng.uniform(-10, 3)), rng);
        CHECK(2 * size(g) * size(g) == doctest::Approx(std::log(std::norm(g.a))).epsilon(1e-12));
        CHECK(log_abs_a(g) == doctest::Approx(std::log(std::abs(g.a))).epsilon(1e-11));
    }
    for (double x : {1e-300, 1e-12, 1e-3, 0.5, 1.0, 10.0, 1e5, 1e200})
        CHECK(arsinh(x) == doctest::Approx(std::asinh(x)).epsilon(1e-15));
    CHECK(arsinh(0.0) == 0.0);
    CHECK(arsinh(1.0) == doctest::Approx(std::log(1 + std::sqrt(2.0))).epsilon(1e-15));
}

TEST_CASE("spectral norm") {
    CHECK(spectral_norm(Su11::identity()) == 1.0);
    CHECK(spectral_norm({std::cosh(1.0), std::sinh(1.0)}) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    Rng rng(5);
    for (int t = 0; t < 500; ++t) {
        const auto g = sample_su11(std::exp(rng.uniform(-8, 3)), rng);
        const double ref = oracle::largest_singular_value(oracle::su11(g.a, g.b));
        CHECK(spectral_norm(g) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("submultiplicativity, arsinh chain and L1 bound") {
    Rng rng(6);
    for (int t = 0; t < 200; ++t) {
        const auto g = sample_su11(rng.uniform(0, 4), rng);
        const auto h = sample_su11(rng.uniform(0, 4), rng);
        CHECK(spectral_norm(compose(g, h)) <= spectral_norm(g) * spectral_norm(h) * (1 + 1e-12));

        const int len = 1 + static_cast<int>(rng.below(64));
        std::vector<Su11> chain;
        double arsinh_sum = 0.0;
        for (int j = 0; j < len; ++j) {
            chain.push_back(sample_su11(rng.uniform(0, 2), rng));
            arsinh_sum += arsinh(std::abs(chain.back().b));
        }
        CHECK(arsinh(std::abs(compose_all(chain).b)) <= arsinh_sum * (1 + 1e-12));

        std::vector<Su11> cells;
        double l1 = 0.0;
        for (int j = 0; j < len; ++j) {
            const cplx w(rng.uniform(-2, 2), rng.uniform(-2, 2));
            const double h = rng.uniform(0.001, 0.2);
            cells.push_back(cell_transfer(w, h));
            l1 += h * std::abs(w);
        }
        CHECK(size(compose_all(cells)) <= l1 * (1 + 1e-12));
    }
}
