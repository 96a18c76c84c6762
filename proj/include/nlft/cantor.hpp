#pragma once

// Exact base-d arithmetic on the Cantor group A_d.
//
// A point of [0, inf) with a terminating base-d expansion is stored as
// numerator * d^(-scale). Digit n of the point is the coefficient of d^n.
// The group law adds digits mod d without carries, and the character
// E_d(x, xi) = exp(2 pi i / d * sum_n x_n xi_{-1-n}) pairs the digits of x
// against the reflected digits of xi.

#include <complex>
#include <cstdint>
#include <vector>

namespace nlft {

using u64 = std::uint64_t;
using cplx = std::complex<double>;

// d^e, throwing InputTooLarge if it does not fit in 64 bits.
u64 ipow(u64 d, unsigned e);

// exp(2 pi i r / d) for an integer residue r. The same value is returned for
// every r congruent mod d, so phases built from integer digit sums are
// bit-stable.
cplx unit_root(unsigned d, u64 r);

// Table of unit_root(d, r) for r = 0..d-1.
std::vector<cplx> unit_roots(unsigned d);

class DadicRational {
public:
    DadicRational(unsigned d, u64 numerator, unsigned scale = 0);

    static DadicRational zero(unsigned d) { return DadicRational(d, 0, 0); }

    unsigned radix() const noexcept { return d_; }
    u64 numerator() const noexcept { return num_; }
    unsigned scale() const noexcept { return scale_; }

    // Coefficient of d^n; zero outside the finite expansion.
    unsigned digit(int n) const;

    // Lowest position that may carry a nonzero digit (= -scale).
    int lowest_position() const noexcept { return -static_cast<int>(scale_); }
    // One past the highest nonzero digit position (lowest_position() if zero).
    int end_position() const;

    double to_double() const;

    // Exact value comparison; radices must agree.
    friend bool operator==(const DadicRational& x, const DadicRational& y);
    friend bool operator<(const DadicRational& x, const DadicRational& y);

private:
    unsigned d_;
    u64 num_;
    unsigned scale_;
};

// Digitwise addition mod d (no carries).
DadicRational group_add(const DadicRational& x, const DadicRational& y);

// Integer digit pairing sum_n x_n xi_{-1-n}, reduced mod d.
unsigned character_exponent(const DadicRational& x, const DadicRational& xi);

// E_d(x, xi).
cplx character(const DadicRational& x, const DadicRational& xi);

// [index * d^exponent, (index + 1) * d^exponent), left-closed right-open.
class DadicInterval {
public:
    DadicInterval(unsigned d, int exponent, u64 index);

    unsigned radix() const noexcept { return d_; }
    int exponent() const noexcept { return exponent_; }
    u64 index() const noexcept { return index_; }

    DadicRational left() const;
    DadicRational right() const;
    double length() const;

    // True iff x lies in [left, right).
    bool contains(const DadicRational& x) const;

    friend bool operator==(const DadicInterval&, const DadicInterval&) = default;

private:
    unsigned d_;
    int exponent_;
    u64 index_;
};

// The d children of I in increasing order.
std::vector<DadicInterval> refine_interval(const DadicInterval& interval);

// I x omega with |I| |omega| = 1.
class Tile {
public:
    Tile(DadicInterval time, DadicInterval freq);

    const DadicInterval& time() const noexcept { return time_; }
    const DadicInterval& freq() const noexcept { return freq_; }

private:
    DadicInterval time_;
    DadicInterval freq_;
};

}  // namespace nlft
