#pragma once

// Theorem-level experiments on top of the engine and the Bellman function:
// the scale functional across a pyramid, the truncated Plancherel defect,
// Hausdorff-Young ratio scans and seeded fuzzers for the swapping
// inequality and the per-case lemmas behind it.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nlft/bellman.hpp"
#include "nlft/engine.hpp"
#include "nlft/norms.hpp"
#include "nlft/random.hpp"

namespace nlft {

// Multiplicative slack for proven non-strict inequalities.
inline constexpr double kSlack = 1e-10;
// Values below this on the left side never count as violations.
inline constexpr double kSubnormalGuard = 1e-300;

// Default exponent grid in (1, 2].
std::vector<double> default_p_grid();

// 2^6 d^5: constant of the two-sided comparison between beta_d(|b|) and (ln|a|)^(1/2).
double comparison_constant(unsigned d);
// Square of comparison_constant, the cap on Hausdorff-Young ratios.
double hy_ratio_cap(unsigned d);

// Calculus properties of beta_d checked on a log-spaced grid of t in [1e-12, 1e6].
struct BellmanAudit {
    unsigned d = 2;
    double threshold = 0.0;
    double residual = 0.0;
    double lower_bound = 0.0;  // 2^-5 d^-5
    double upper_bound = 0.0;  // 2^-4 d^-5
    std::size_t points = 0;
    std::uint64_t sandwich_violations = 0;     // 2^-6 d^-5 sqrt(ln(1+t^2)) <= beta <= 2 sqrt(ln(1+t^2))
    std::uint64_t small_t_violations = 0;      // beta <= t e^-t on [0, 1]
    std::uint64_t upper_branch_violations = 0; // beta <= (2d)^-5 sqrt(1 + arsinh t)
    double continuity_gap = 0.0;               // relative jump of beta at t_d

    bool threshold_ok() const { return residual <= 1e-14 && lower_bound < threshold && threshold < upper_bound; }
    bool ok() const {
        return threshold_ok() && sandwich_violations == 0 && small_t_violations == 0 &&
               upper_branch_violations == 0 && continuity_gap <= 1e-15;
    }
};

BellmanAudit audit_bellman(unsigned d, std::size_t points = 10000);

struct ScaleReport {
    double p = 2.0;
    double q = 2.0;
    std::vector<int> scales;
    std::vector<double> values;  // B_n, one per scale, base first
    bool monotone = true;
    double max_violation = 0.0;  // max relative increase B_{n+1} / B_n - 1 (0 if none)
};

// B_n = ( sum_columns ( rows^-1 sum_rows beta_d(|b_tile|)^q )^(p/q) )^(1/p)
// per layer; q = infinity takes the row max.
ScaleReport scale_functional(const TilePyramid& pyramid, const BellmanFunction& bf, const ConjugatePair& pair);

// Both ends of the chain bounding the top-layer q-mean by ||f||_p.
struct ChainBounds {
    double base_value;   // B at the base scale
    double base_bound;   // C_d ||f||_p
    double top_mean;     // (rows^-1 sum_rows (ln|a|)^(q/2))^(1/q) on the top layer
    double top_bound;    // C_d B at the top scale
};

ChainBounds chain_bounds(const TilePyramid& pyramid, const ScaleReport& report, const StepFunction& f,
                         const BellmanFunction& bf);

// sum over the top-layer grid of 2 ln|a(xi)| d^(-Nx): the energy captured in
// the frequency window [0, d^Nxi).
double plancherel_captured(const TileLayer& top, unsigned d, int support_exponent);

struct PlancherelRow {
    int freq_exponent;
    double energy;    // ||f||_2^2
    double captured;  // frequency-window integral of 2 ln|a| over [0, d^freq_exponent)
    double defect;    // energy - captured
};

// One row per window [0, d^n), n = min..max. The window may be narrower than
// the cell resolution of f; the transform is computed once at the finer of
// the two and summed over prefixes.
std::vector<PlancherelRow> plancherel_table(const StepFunction& f, int min_freq_exponent, int max_freq_exponent,
                                           unsigned threads = 1);

double plancherel_defect(const StepFunction& f, int freq_exponent, unsigned threads = 1);

struct RatioReport {
    std::vector<double> p_grid;
    std::vector<double> ratios;  // ||(ln|a|)^(1/2)||_{L^q(grid)} / ||f||_{L^p}
    double sup_ratio = 0.0;
    double theoretical_cap = 0.0;
    bool within_cap = true;
};

RatioReport hy_ratios(const TileLayer& top, const StepFunction& f, const BellmanFunction& bf,
                      std::span<const double> p_grid);

RatioReport hy_ratio_scan(const StepFunction& f, int freq_exponent, const BellmanFunction& bf,
                          std::span<const double> p_grid, unsigned threads = 1);

// One evaluated inequality lhs <= rhs.
struct InequalitySides {
    double lhs = 0.0;
    double rhs = 0.0;
    bool applicable = true;
};

bool violates(const InequalitySides& s, double slack = kSlack) noexcept;
double side_ratio(const InequalitySides& s) noexcept;

// Accumulated outcome of one inequality over many trials.
struct CheckStats {
    std::string name;
    double p = 0.0;  // exponent of the worst trial (0 for p-independent checks)
    std::uint64_t checks = 0;
    std::uint64_t skipped = 0;
    std::uint64_t violations = 0;
    double max_ratio = 0.0;
    std::vector<Su11> witness;  // factors attaining max_ratio

    void record(const InequalitySides& s, double p_value, std::span<const Su11> factors);
    // Appends `later`; ties keep the earlier witness.
    void merge(const CheckStats& later);
};

// Swapping inequality for one instance:
// lq_mean(beta(|B_k|), q) <= lp_sum(beta(|b_j|), p).
InequalitySides swap_inequality(const SwapInstance& inst, const BellmanFunction& bf, const ConjugatePair& pair);

struct SwapFuzzReport {
    unsigned d = 2;
    Regime regime = Regime::mixed;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<CheckStats> per_p;

    std::uint64_t violations() const;
};

SwapFuzzReport fuzz_swap_inequality(unsigned d, Regime regime, std::uint64_t trials, std::uint64_t seed,
                                    std::span<const double> p_grid, unsigned threads = 1);

// Which case of the swapping proof an instance falls in (case1, case2 or case3).
Regime classify(std::span<const Su11> factors, double threshold);

// Named intermediate inequalities of the case analysis, evaluated verbatim on
// one instance. Only checks belonging to the instance's case are returned;
// p-independent checks are returned only when `include_p_free` is set.
struct NamedCheck {
    std::string name;
    InequalitySides sides;
    bool p_free = false;
};

std::vector<NamedCheck> case_lemma_checks(std::span<const Su11> factors, const BellmanFunction& bf,
                                          const ConjugatePair& pair, bool include_p_free = true);

struct CaseLemmaReport {
    unsigned d = 2;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<CheckStats> checks;

    std::uint64_t violations() const;
    const CheckStats* find(const std::string& name) const;
};

// `trials` instances per case, each checked at every p in the grid.
CaseLemmaReport fuzz_case_lemmas(unsigned d, std::uint64_t trials, std::uint64_t seed,
                                 std::span<const double> p_grid, unsigned threads = 1);

}  // namespace nlft
