#pragma once

// Seeded sampling for the fuzzers and the randomized experiments. Draws are
// built from raw 64-bit engine output so a seed reproduces the same values
// on every standard library.

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "nlft/engine.hpp"
#include "nlft/su11.hpp"

namespace nlft {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream seed for (master seed, stream index, tag).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t tag = 0) noexcept {
    return mix64(mix64(mix64(master) ^ stream) ^ (tag * 0xd1b54a32d192ed03ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    // Uniform in (lo, hi].
    double uniform_left_open(double lo, double hi) { return hi - (hi - lo) * uniform(); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)); }
    // Standard normal (Box-Muller).
    double normal();

private:
    std::mt19937_64 engine_;
};

enum class Regime { case1, case2, case3, mixed };

std::string_view to_string(Regime r) noexcept;
// Throws InvalidArgument for unknown names.
Regime parse_regime(std::string_view name);

// b = r e^(i theta), a = sqrt(1 + r^2) e^(i phi) with uniform phases.
Su11 sample_su11(double r, Rng& rng);

// d factors whose |b_j| follow the regime's strata (threshold = t_d):
//   case1: every r in (0, t_d]
//   case2: one random pivot in (t_d, 10], the rest in (0, t_d]
//   case3: between 2 and d random coordinates in (t_d, 10], the rest in (0, t_d]
//   mixed: every r log-uniform on [t_d / 1000, 10]
std::vector<Su11> sample_factors(unsigned d, Regime regime, double threshold, Rng& rng);

// Random step function with complex (or real) Gaussian values scaled to the given L2 norm.
StepFunction random_step_function(unsigned d, int cell_exponent, int support_exponent, double l2_norm, Rng& rng,
                                  bool real_valued = false);

}  // namespace nlft
