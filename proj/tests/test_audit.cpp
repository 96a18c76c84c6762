#include "doctest.h"

#include "nlft/audit.hpp"
#include "nlft/errors.hpp"
#include "nlft/io.hpp"

using namespace nlft;

TEST_CASE("bellman audit") {
    for (unsigned d : {2u, 3u, 5u}) {
        const auto a = audit_bellman(d);
        CHECK(a.points == 10000);
        CHECK(a.threshold_ok());
        CHECK(a.sandwich_violations == 0);
        CHECK(a.small_t_violations == 0);
        CHECK(a.upper_branch_violations == 0);
        CHECK(a.continuity_gap <= 1e-15);
        CHECK(a.ok());
    }
}

TEST_CASE("scale functional of the zero function") {
    const auto bf = solve_threshold(2);
    const auto pyr = transform(StepFunction::zero(2, 0, 2), 2);
    const auto r = scale_functional(pyr, bf, ConjugatePair(1.5));
    CHECK(r.values.size() == 5);
    for (double v : r.values) CHECK(v == 0.0);
    CHECK(r.monotone);
    CHECK_THROWS_AS(scale_functional(pyr, solve_threshold(3), ConjugatePair(1.5)), InvalidArgument);
}

TEST_CASE("scale functional at p = 2 is a normalised total") {
    Rng rng(31);
    const auto bf = solve_threshold(2);
    const auto f = random_step_function(2, 0, 3, 1.0, rng);
    const auto pyr = transform(f, 3);
    const auto r = scale_functional(pyr, bf, ConjugatePair(2.0));
    for (std::size_t n = 0; n < pyr.layers().size(); ++n) {
        const auto& layer = pyr.layers()[n];
        double s = 0.0;
        for (const auto& g : layer.tiles) s += std::pow(bf(std::abs(g.b)), 2);
        CHECK(r.values[n] * r.values[n] == doctest::Approx(s / layer.rows).epsilon(1e-12));
    }
}

TEST_CASE("scale functional decreases up the pyramid") {
    Rng rng(32);
    for (unsigned d : {2u, 3u}) {
        const auto bf = solve_threshold(d);
        for (int t = 0; t < 5; ++t) {
            const auto f = random_step_function(d, 0, 3, rng.uniform(0.1, 20.0), rng);
            const auto pyr = transform(f, 3);
            for (double p : {1.01, 1.2, 1.5, 1.8, 2.0}) {
                const auto r = scale_functional(pyr, bf, ConjugatePair(p));
                CHECK(r.monotone);
                const auto c = chain_bounds(pyr, r, f, bf);
                CHECK(c.base_value <= c.base_bound);
                CHECK(c.top_mean <= c.top_bound * (1 + kSlack));
            }
        }
    }
}

TEST_CASE("plancherel") {
    CHECK(plancherel_defect(StepFunction::zero(2, 1, 1), 3) == 0.0);

    const StepFunction one(2, 0, 0, {1.0});
    CHECK(plancherel_defect(one, 0) == doctest::Approx(1 - 2 * std::log(std::cosh(1.0))).epsilon(1e-14));

    Rng rng(33);
    const auto f = random_step_function(2, 8, 0, 1.0, rng, true);
    const auto table = plancherel_table(f, 2, 8);
    REQUIRE(table.size() == 7);
    for (std::size_t i = 0; i < table.size(); ++i) {
        CHECK(table[i].defect >= -1e-10);
        CHECK(table[i].defect == doctest::Approx(plancherel_defect(f, table[i].freq_exponent)).epsilon(1e-12));
        if (i) CHECK(table[i].defect < table[i - 1].defect);
    }
    CHECK_THROWS_AS(plancherel_table(f, 3, 2), InvalidArgument);
}

TEST_CASE("hausdorff-young ratios") {
    const auto bf = solve_threshold(2);
    const StepFunction one(2, 0, 0, {1.0});
    const std::vector<double> two = {2.0};
    const auto r = hy_ratio_scan(one, 0, bf, two);
    CHECK(r.ratios[0] == doctest::Approx(std::sqrt(std::log(std::cosh(1.0)))).epsilon(1e-14));
    CHECK(r.ratios[0] == doctest::Approx(0.6586).epsilon(1e-4));
    CHECK(r.theoretical_cap == std::pow(2.0, 22));
    CHECK(r.within_cap);

    Rng rng(34);
    std::vector<double> grid = {1.0, 1.5, 1.999, 2.0};
    for (int t = 0; t < 10; ++t) {
        const auto f = random_step_function(2, 1, 2, rng.uniform(0.1, 5), rng);
        const auto rep = hy_ratio_scan(f, 3, bf, grid);
        CHECK(rep.ratios[0] <= 1.0 + 1e-12);
        CHECK(rep.sup_ratio <= rep.theoretical_cap);
        CHECK(rep.ratios[2] / rep.ratios[3] == doctest::Approx(1.0).epsilon(0.1));
    }
    CHECK_THROWS_AS(hy_ratio_scan(StepFunction::zero(2, 0, 0), 0, bf, grid), InvalidArgument);
}

TEST_CASE("violation accounting") {
    CHECK_FALSE(violates({1.0, 1.0}));
    CHECK_FALSE(violates({1.0 + 1e-11, 1.0}));
    CHECK(violates({1.0 + 1e-9, 1.0}));
    CHECK_FALSE(violates({1e-301, 0.0}));
    CHECK_FALSE(violates({2.0, 1.0, false}));
    CHECK(side_ratio({0.0, 0.0}) == 0.0);
    CHECK(side_ratio({1.0, 4.0}) == 0.25);

    CheckStats a{"x"}, b{"x"};
    const std::vector<Su11> w1 = {Su11::identity()}, w2 = {{std::sqrt(2.0), 1.0}};
    a.record({0.5, 1.0}, 1.5, w1);
    b.record({0.9, 1.0}, 2.0, w2);
    b.record({0.1, 1.0, false}, 2.0, w1);
    a.merge(b);
    CHECK(a.checks == 3);
    CHECK(a.skipped == 1);
    CHECK(a.max_ratio == 0.9);
    CHECK(a.p == 2.0);
    CHECK(a.witness == w2);
}

TEST_CASE("swap inequality hand instances") {
    const auto bf = solve_threshold(2);
    for (double s : {0.001, 0.01, 0.1}) {
        const std::vector<Su11> f = {{std::cosh(s), std::sinh(s)}, {std::cosh(s), std::sinh(s)}};
        const auto inst = swap_product(f);
        for (double p : default_p_grid()) {
            const ConjugatePair pr(p);
            const auto sides = swap_inequality(inst, bf, pr);
            // B_1 = 0, so only B_0 = sinh 2s contributes to the mean
            const double lhs = std::pow(0.5, 1 / pr.q()) * bf(std::sinh(2 * s));
            const double rhs = std::pow(2.0, 1 / p) * bf(std::sinh(s));
            CHECK(sides.lhs == doctest::Approx(lhs).epsilon(1e-12));
            CHECK(sides.rhs == doctest::Approx(rhs).epsilon(1e-12));
            CHECK_FALSE(violates(sides));
        }
    }
    const auto zero = swap_product(std::vector<Su11>(3));
    const auto sides = swap_inequality(zero, solve_threshold(3), ConjugatePair(1.5));
    CHECK(sides.lhs == 0.0);
    CHECK(sides.rhs == 0.0);
}

TEST_CASE("classification and case checks") {
    const auto bf = solve_threshold(3);
    const double t = bf.threshold;
    auto g = [](double r) { return Su11{std::sqrt(1 + r * r), r}; };
    CHECK(classify(std::vector<Su11>{g(t / 2), g(t), g(0)}, t) == Regime::case1);
    CHECK(classify(std::vector<Su11>{g(t / 2), g(2 * t), g(0)}, t) == Regime::case2);
    CHECK(classify(std::vector<Su11>{g(3 * t), g(2 * t), g(0)}, t) == Regime::case3);

    const std::vector<Su11> ident(3);
    for (const auto& c : case_lemma_checks(ident, bf, ConjugatePair(1.5))) {
        CHECK(c.name.rfind("case1.", 0) == 0);
        if (c.sides.applicable) {
            CHECK(c.sides.lhs == 0.0);
        }
        CHECK_FALSE(violates(c.sides));
    }
    const auto without = case_lemma_checks(ident, bf, ConjugatePair(1.5), false);
    for (const auto& c : without) CHECK_FALSE(c.p_free);

    Rng rng(35);
    for (Regime regime : {Regime::case1, Regime::case2, Regime::case3})
        for (int trial = 0; trial < 200; ++trial) {
            const auto f = sample_factors(3, regime, t, rng);
            CHECK(classify(f, t) == regime);
            for (const auto& c : case_lemma_checks(f, bf, ConjugatePair(1.25))) {
                CHECK(c.name.substr(0, 5) == to_string(regime));
                CHECK_FALSE(violates(c.sides));
            }
        }
}

TEST_CASE("case 1 rough bound on |B_k|") {
    Rng rng(36);
    for (unsigned d : {2u, 3u, 5u}) {
        const auto bf = solve_threshold(d);
        for (int trial = 0; trial < 500; ++trial) {
            const auto inst = swap_product(sample_factors(d, Regime::case1, bf.threshold, rng));
            for (const auto& o : inst.outputs) CHECK(std::abs(o.b) <= 0.125 * std::pow(d, -4.0));
        }
    }
}

TEST_CASE("fuzzers are reproducible and thread independent") {
    const auto grid = default_p_grid();
    const auto a = fuzz_swap_inequality(3, Regime::mixed, 3000, 99, grid, 1);
    const auto b = fuzz_swap_inequality(3, Regime::mixed, 3000, 99, grid, 3);
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(a.violations() == 0);
    CHECK(a.per_p.size() == grid.size());
    CHECK(a.per_p[0].checks == 3000);
    const auto c = fuzz_swap_inequality(3, Regime::mixed, 3000, 100, grid, 1);
    CHECK(to_json(a).dump() != to_json(c).dump());

    const auto l1 = fuzz_case_lemmas(2, 500, 7, grid, 1);
    const auto l2 = fuzz_case_lemmas(2, 500, 7, grid, 2);
    CHECK(to_json(l1).dump() == to_json(l2).dump());
    CHECK(l1.violations() == 0);
    REQUIRE(l1.find("case3.pointwise") != nullptr);
    CHECK(l1.find("case3.pointwise")->checks == 500);
    CHECK(l1.find("nonexistent") == nullptr);

    const std::vector<double> bad = {1.0};
    CHECK_THROWS_AS(fuzz_swap_inequality(2, Regime::case1, 10, 1, bad), InvalidArgument);
    CHECK_THROWS_AS(fuzz_swap_inequality(2, Regime::case1, 0, 1, grid), InvalidArgument);
}

TEST_CASE("regime names") {
    for (Regime r : {Regime::case1, Regime::case2, Regime::case3, Regime::mixed})
        CHECK(parse_regime(to_string(r)) == r);
    CHECK_THROWS_AS(parse_regime("case4"), InvalidArgument);
}
