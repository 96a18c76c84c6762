#include "nlft/audit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlft/errors.hpp"
#include "nlft/parallel.hpp"

namespace nlft {

namespace {

constexpr std::uint64_t kChunk = 1024;

std::vector<double> abs_b(std::span<const Su11> g) {
    std::vector<double> v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) v[j] = std::abs(g[j].b);
    return v;
}

template <class F>
std::vector<double> map_values(std::span<const double> v, F&& f) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), f);
    return out;
}

double max_of(std::span<const double> v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

CheckStats& stats_for(std::vector<CheckStats>& all, const std::string& name) {
    for (auto& s : all)
        if (s.name == name) return s;
    all.push_back(CheckStats{name});
    return all.back();
}

void merge_into(std::vector<CheckStats>& into, const std::vector<CheckStats>& later) {
    for (const auto& s : later) stats_for(into, s.name).merge(s);
}

std::string p_label(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "p=%.6g", p);
    return buf;
}

}  // namespace

std::vector<double> default_p_grid() { return {1.001, 1.01, 1.1, 1.25, 1.5, 1.75, 1.9, 1.99, 1.999, 2.0}; }

double comparison_constant(unsigned d) { return 64.0 * std::pow(static_cast<double>(d), 5.0); }

double hy_ratio_cap(unsigned d) {
    const double c = comparison_constant(d);
    return c * c;
}

BellmanAudit audit_bellman(unsigned d, std::size_t points) {
    const auto bf = solve_threshold(d);
    const double dd = static_cast<double>(d);
    BellmanAudit a;
    a.d = d;
    a.threshold = bf.threshold;
    a.residual = bf.residual();
    a.lower_bound = std::pow(2.0, -5) * std::pow(dd, -5);
    a.upper_bound = std::pow(2.0, -4) * std::pow(dd, -5);
    a.points = points;
    const double lo = std::log(1e-12), hi = std::log(1e6);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = points == 1 ? 1.0 : std::exp(lo + (hi - lo) * static_cast<double>(i) / (points - 1.0));
        const double b = bf(t);
        const double s = std::sqrt(std::log1p(t * t));
        if (!(std::pow(2.0, -6) * std::pow(dd, -5) * s <= b * (1.0 + kSlack) && b <= 2.0 * s * (1.0 + kSlack)))
            ++a.sandwich_violations;
        if (t <= 1.0 && b > t * std::exp(-t) * (1.0 + kSlack)) ++a.small_t_violations;
        if (b > bf.scale_constant * std::sqrt(1.0 + arsinh(t)) * (1.0 + kSlack)) ++a.upper_branch_violations;
    }
    const double below = bf(bf.threshold);
    const double above = bf.scale_constant * std::sqrt(1.0 + arsinh(bf.threshold));
    a.continuity_gap = std::abs(below - above) / below;
    return a;
}

ScaleReport scale_functional(const TilePyramid& pyramid, const BellmanFunction& bf, const ConjugatePair& pair) {
    if (pyramid.radix() != bf.d)
        throw InvalidArgument("pyramid radix " + std::to_string(pyramid.radix()) + " differs from beta_d radix " +
                              std::to_string(bf.d));
    ScaleReport report;
    report.p = pair.p();
    report.q = pair.q();
    std::vector<double> betas, column_means;
    for (const auto& layer : pyramid.layers()) {
        column_means.assign(layer.columns, 0.0);
        betas.resize(layer.rows);
        for (std::size_t c = 0; c < layer.columns; ++c) {
            for (std::size_t r = 0; r < layer.rows; ++r) betas[r] = bf(std::abs(layer.at(c, r).b));
            column_means[c] = lq_mean(betas, pair.q());
        }
        report.scales.push_back(layer.scale);
        report.values.push_back(lp_sum(column_means, pair.p()));
    }
    for (std::size_t n = 0; n + 1 < report.values.size(); ++n) {
        const double cur = report.values[n], next = report.values[n + 1];
        if (next > cur * (1.0 + kSlack)) report.monotone = false;
        if (next > cur) report.max_violation = std::max(report.max_violation, cur > 0.0 ? next / cur - 1.0 : kInfinity);
    }
    return report;
}

ChainBounds chain_bounds(const TilePyramid& pyramid, const ScaleReport& report, const StepFunction& f,
                         const BellmanFunction& bf) {
    const double c = comparison_constant(bf.d);
    const auto& top = pyramid.top();
    std::vector<double> sizes(top.tiles.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) sizes[k] = size(top.tiles[k]);
    return {report.values.front(), c * f.lp_norm(report.p), lq_mean(sizes, report.q), c * report.values.back()};
}

double plancherel_captured(const TileLayer& top, unsigned d, int support_exponent) {
    double s = 0.0;
    for (const auto& g : top.tiles) s += 2.0 * log_abs_a(g);
    return s * std::pow(static_cast<double>(d), -static_cast<double>(support_exponent));
}

std::vector<PlancherelRow> plancherel_table(const StepFunction& f, int min_freq_exponent, int max_freq_exponent,
                                           unsigned threads) {
    if (min_freq_exponent < -f.support_exponent() || min_freq_exponent > max_freq_exponent)
        throw InvalidArgument("frequency window exponents out of order");
    const unsigned d = f.radix();
    const int nx = f.support_exponent();
    const auto top = transform_top(f, std::max(max_freq_exponent, f.cell_exponent()), threads);
    const double energy = f.l2_norm() * f.l2_norm();
    const double spacing = std::pow(static_cast<double>(d), -static_cast<double>(nx));
    std::vector<PlancherelRow> table;
    double sum = 0.0;
    std::size_t k = 0;
    for (int n = min_freq_exponent; n <= max_freq_exponent; ++n) {
        const std::size_t rows = static_cast<std::size_t>(ipow(d, static_cast<unsigned>(nx + n)));
        for (; k < rows; ++k) sum += 2.0 * log_abs_a(top.tiles[k]);
        const double captured = sum * spacing;
        table.push_back({n, energy, captured, energy - captured});
    }
    return table;
}

double plancherel_defect(const StepFunction& f, int freq_exponent, unsigned threads) {
    return plancherel_table(f, freq_exponent, freq_exponent, threads).front().defect;
}

RatioReport hy_ratios(const TileLayer& top, const StepFunction& f, const BellmanFunction& bf,
                      std::span<const double> p_grid) {
    if (top.columns != 1) throw InvalidArgument("hy_ratios needs a top layer (single column)");
    if (bf.d != f.radix()) throw InvalidArgument("radix mismatch between f and beta_d");
    if (f.l1_norm() == 0.0) throw InvalidArgument("Hausdorff-Young ratio undefined for f = 0");
    std::vector<double> sizes(top.tiles.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) sizes[k] = size(top.tiles[k]);
    const double spacing = std::pow(static_cast<double>(f.radix()), -static_cast<double>(f.support_exponent()));
    RatioReport report;
    report.theoretical_cap = hy_ratio_cap(bf.d);
    for (double p : p_grid) {
        const ConjugatePair pair(p);
        const double num = pair.q_infinite() ? max_of(sizes) : lp_sum(sizes, pair.q()) * std::pow(spacing, 1.0 / pair.q());
        report.p_grid.push_back(p);
        report.ratios.push_back(num / f.lp_norm(p));
    }
    report.sup_ratio = max_of(report.ratios);
    report.within_cap = report.sup_ratio <= report.theoretical_cap;
    return report;
}

RatioReport hy_ratio_scan(const StepFunction& f, int freq_exponent, const BellmanFunction& bf,
                          std::span<const double> p_grid, unsigned threads) {
    if (f.l1_norm() == 0.0) throw InvalidArgument("Hausdorff-Young ratio undefined for f = 0");
    return hy_ratios(transform_top(f, freq_exponent, threads), f, bf, p_grid);
}

bool violates(const InequalitySides& s, double slack) noexcept {
    return s.applicable && s.lhs > s.rhs * (1.0 + slack) && s.lhs > kSubnormalGuard;
}

double side_ratio(const InequalitySides& s) noexcept {
    if (s.rhs > 0.0) return s.lhs / s.rhs;
    return s.lhs > kSubnormalGuard ? kInfinity : 0.0;
}

void CheckStats::record(const InequalitySides& s, double p_value, std::span<const Su11> factors) {
    ++checks;
    if (!s.applicable) {
        ++skipped;
        return;
    }
    if (violates(s)) ++violations;
    const double r = side_ratio(s);
    if (r > max_ratio || witness.empty()) {
        max_ratio = std::max(max_ratio, r);
        p = p_value;
        witness.assign(factors.begin(), factors.end());
    }
}

void CheckStats::merge(const CheckStats& later) {
    checks += later.checks;
    skipped += later.skipped;
    violations += later.violations;
    if (later.max_ratio > max_ratio || (witness.empty() && !later.witness.empty())) {
        max_ratio = std::max(max_ratio, later.max_ratio);
        p = later.p;
        witness = later.witness;
    }
}

InequalitySides swap_inequality(const SwapInstance& inst, const BellmanFunction& bf, const ConjugatePair& pair) {
    const auto bb = abs_b(inst.factors);
    const auto BB = abs_b(inst.outputs);
    const auto beta_b = map_values(bb, [&](double t) { return bf(t); });
    const auto beta_B = map_values(BB, [&](double t) { return bf(t); });
    return {lq_mean(beta_B, pair.q()), lp_sum(beta_b, pair.p())};
}

std::uint64_t SwapFuzzReport::violations() const {
    std::uint64_t v = 0;
    for (const auto& s : per_p) v += s.violations;
    return v;
}

SwapFuzzReport fuzz_swap_inequality(unsigned d, Regime regime, std::uint64_t trials, std::uint64_t seed,
                                    std::span<const double> p_grid, unsigned threads) {
    if (trials == 0) throw InvalidArgument("fuzz needs at least one trial");
    const auto bf = solve_threshold(d);
    std::vector<ConjugatePair> pairs;
    for (double p : p_grid) {
        if (!(p > 1.0)) throw InvalidArgument("swapping inequality fuzz needs p > 1, got " + std::to_string(p));
        pairs.emplace_back(p);
    }
    const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
    std::vector<std::vector<CheckStats>> partial(chunks);
    parallel_for(chunks, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            Rng rng(derive_seed(seed, c, static_cast<std::uint64_t>(regime) + 1));
            auto& stats = partial[c];
            for (const auto& pair : pairs) stats.push_back(CheckStats{p_label(pair.p())});
            const std::uint64_t n = std::min(kChunk, trials - c * kChunk);
            for (std::uint64_t t = 0; t < n; ++t) {
                const auto inst = swap_product(sample_factors(d, regime, bf.threshold, rng));
                for (std::size_t i = 0; i < pairs.size(); ++i)
                    stats[i].record(swap_inequality(inst, bf, pairs[i]), pairs[i].p(), inst.factors);
            }
        }
    });
    SwapFuzzReport report{d, regime, trials, seed, {}};
    for (const auto& part : partial) merge_into(report.per_p, part);
    return report;
}

Regime classify(std::span<const Su11> factors, double threshold) {
    const auto [m, ms] = pivot_indices(factors);
    if (std::abs(factors[m].b) <= threshold) return Regime::case1;
    if (std::abs(factors[ms].b) <= threshold) return Regime::case2;
    return Regime::case3;
}

std::vector<NamedCheck> case_lemma_checks(std::span<const Su11> factors, const BellmanFunction& bf,
                                          const ConjugatePair& pair, bool include_p_free) {
    const auto inst = swap_product(factors);
    const double d = static_cast<double>(inst.d);
    const double p = pair.p(), q = pair.q();
    const auto [m, ms] = pivot_indices(factors);
    const auto bb = abs_b(factors);
    const auto BB = abs_b(inst.outputs);
    const double bm = bb[m], bms = bb[ms], am = std::abs(factors[m].a);
    const Regime regime = classify(factors, bf.threshold);
    std::vector<NamedCheck> out;
    bool p_free = false;
    auto add = [&](std::string name, double lhs, double rhs, bool applicable = true) {
        out.push_back({std::move(name), {lhs, rhs, applicable}, p_free});
    };
    auto te = [](double t) { return t * std::exp(-t); };

    if (regime == Regime::case1) {
        const auto lin = linear_part(factors);
        std::vector<double> bp(lin.b_prime.size()), Bp(lin.B_prime.size()), gap(BB.size());
        for (std::size_t j = 0; j < bp.size(); ++j) bp[j] = std::abs(lin.b_prime[j]);
        for (std::size_t k = 0; k < Bp.size(); ++k) {
            Bp[k] = std::abs(lin.B_prime[k]);
            gap[k] = std::abs(inst.outputs[k].b - lin.B_prime[k]);
        }
        const double small_term = std::pow(2.0, -3) * std::pow(d, -2) * bms * bms;
        if (include_p_free) {
            p_free = true;
            double chain = 0.0;
            for (std::size_t j = 0; j < factors.size(); ++j) {
                double prod = bb[j];
                for (std::size_t l = 0; l < factors.size(); ++l)
                    if (l != j) prod *= spectral_norm(factors[l]);
                chain += prod;
            }
            add("case1.rough_chain", max_of(BB), chain);
            add("case1.rough_bound", max_of(BB), std::pow(2.0, -3) * std::pow(d, -4));
            add("case1.nonlinear_term_bound", max_of(gap), small_term);
            p_free = false;
        }
        const double norm_bp = lp_sum(bp, p);
        const auto te_B = map_values(BB, te), te_Bp = map_values(Bp, te), te_b = map_values(bb, te);
        add("case1.linear_hausdorff_young", lq_mean(Bp, q), norm_bp);
        add("case1.nonlinear_perturbation", lq_mean(te_B, q), lq_mean(te_Bp, q) + small_term);
        add("case1.jensen_linear", lq_mean(te_Bp, q), te(norm_bp));
        add("case1.linear_vs_small_terms", te(norm_bp), lp_sum(te_b, p) - small_term);
        add("case1.reduced", lq_mean(te_B, q), lp_sum(te_b, p));
    } else if (regime == Regime::case2) {
        const auto lin = linear_part(factors);
        const auto piv = pivot_variant(factors, m);
        std::vector<double> Bpp(piv.size()), gap_nl(BB.size()), gap_piv(BB.size());
        for (std::size_t k = 0; k < BB.size(); ++k) {
            Bpp[k] = std::abs(piv[k]);
            gap_nl[k] = std::abs(inst.outputs[k].b - lin.B_prime[k]);
            gap_piv[k] = std::abs(lin.B_prime[k] - piv[k]);
        }
        if (include_p_free) {
            p_free = true;
            add("case2.nonlinear_term_bound", max_of(gap_nl), 4.0 * d * d * d * am * bms * bms);
            add("case2.pivot_gap_bound", max_of(gap_piv), d * d * am * bms * bms);
            p_free = false;
        }
        const auto one_plus_arsinh_B = map_values(BB, [](double t) { return 1.0 + arsinh(t); });
        const double lhs_power = std::pow(lq_mean(one_plus_arsinh_B, q / 2.0), p / 2.0);
        const double Mq = lq_mean(BB, q);
        double rest = 0.0;  // sum_{j != m} |b_j|^p
        double rest_te = 0.0;
        for (std::size_t j = 0; j < bb.size(); ++j)
            if (j != m) {
                rest += std::pow(bb[j], p);
                rest_te += std::pow(te(bb[j]), p);
            }
        const double pivot_norm = std::pow(std::pow(bm, p) + std::pow(am, p) * rest, 1.0 / p);
        const double big_const = std::pow(2.0, 4.0 * p - 1.0) * std::pow(d, 5.0 * p);
        const double c5 = std::pow(2.0 * d, -5.0);
        add("case2.beta_reduction", c5 * std::pow(lq_mean(one_plus_arsinh_B, q / 2.0), 0.5),
            std::pow(std::pow(c5, p) * std::pow(1.0 + arsinh(bm), p / 2.0) + rest_te, 1.0 / p));
        add("case2.reduced", lhs_power,
            std::pow(1.0 + arsinh(bm), p / 2.0) + std::pow(2.0, 4.0 * p) * std::pow(d, 5.0 * p) * std::pow(bms, p));
        add("case2.power_mean_jensen", lhs_power, std::pow(1.0 + arsinh(Mq), p / 2.0));
        add("case2.arsinh_mean_value", std::pow(1.0 + arsinh(Mq), p / 2.0),
            std::pow(1.0 + arsinh(bm), p / 2.0) + (Mq - bm) / am, Mq >= bm);
        add("case2.pivot_hausdorff_young", lq_mean(Bpp, q), pivot_norm);
        add("case2.pivot_perturbation", Mq, pivot_norm + big_const * am * std::pow(bms, p));
        add("case2.pivot_linear_bound", pivot_norm, bm + big_const * am * std::pow(bms, p));
    } else {
        if (include_p_free) {
            p_free = true;
            double norm_prod = 1.0, arsinh_sum = 0.0, beta_sq = 0.0;
            for (std::size_t j = 0; j < factors.size(); ++j) {
                norm_prod *= spectral_norm(factors[j]);
                arsinh_sum += arsinh(bb[j]);
                beta_sq += bf(bb[j]) * bf(bb[j]);
            }
            double worst_norm = 0.0, worst_arsinh = 0.0, worst_beta = 0.0;
            for (std::size_t k = 0; k < BB.size(); ++k) {
                worst_norm = std::max(worst_norm, spectral_norm(inst.outputs[k]));
                worst_arsinh = std::max(worst_arsinh, arsinh(BB[k]));
                worst_beta = std::max(worst_beta, bf(BB[k]) * bf(BB[k]));
            }
            add("case3.spectral_norm", worst_norm, norm_prod);
            add("case3.arsinh_subadditivity", worst_arsinh, arsinh_sum);
            add("case3.pointwise", worst_beta, beta_sq);
            p_free = false;
        }
        const auto beta_B = map_values(BB, [&](double t) { return bf(t); });
        const auto beta_b = map_values(bb, [&](double t) { return bf(t); });
        add("case3.swap", lq_mean(beta_B, q), lp_sum(beta_b, p));
    }
    return out;
}

std::uint64_t CaseLemmaReport::violations() const {
    std::uint64_t v = 0;
    for (const auto& s : checks) v += s.violations;
    return v;
}

const CheckStats* CaseLemmaReport::find(const std::string& name) const {
    for (const auto& s : checks)
        if (s.name == name) return &s;
    return nullptr;
}

CaseLemmaReport fuzz_case_lemmas(unsigned d, std::uint64_t trials, std::uint64_t seed,
                                 std::span<const double> p_grid, unsigned threads) {
    if (trials == 0) throw InvalidArgument("fuzz needs at least one trial");
    const auto bf = solve_threshold(d);
    std::vector<ConjugatePair> pairs;
    for (double p : p_grid) {
        if (!(p > 1.0)) throw InvalidArgument("case-lemma fuzz needs p > 1, got " + std::to_string(p));
        pairs.emplace_back(p);
    }
    if (pairs.empty()) throw InvalidArgument("empty p-grid");
    const Regime regimes[] = {Regime::case1, Regime::case2, Regime::case3};
    const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
    std::vector<std::vector<CheckStats>> partial(3 * chunks);
    parallel_for(partial.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const Regime regime = regimes[idx / chunks];
            const std::uint64_t c = idx % chunks;
            Rng rng(derive_seed(seed, c, 16 + static_cast<std::uint64_t>(regime)));
            auto& stats = partial[idx];
            const std::uint64_t n = std::min(kChunk, trials - c * kChunk);
            for (std::uint64_t t = 0; t < n; ++t) {
                const auto factors = sample_factors(d, regime, bf.threshold, rng);
                for (std::size_t i = 0; i < pairs.size(); ++i)
                    for (const auto& check : case_lemma_checks(factors, bf, pairs[i], i == 0))
                        stats_for(stats, check.name).record(check.sides, check.p_free ? 0.0 : pairs[i].p(), factors);
            }
        }
    });
    CaseLemmaReport report{d, trials, seed, {}};
    for (const auto& part : partial) merge_into(report.checks, part);
    return report;
}

}  // namespace nlft
