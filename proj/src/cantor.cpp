#include "nlft/cantor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "nlft/errors.hpp"

namespace nlft {

namespace {

using u128 = unsigned __int128;

void require_radix(unsigned d) {
    if (d < 2) throw InvalidArgument("radix must be at least 2, got " + std::to_string(d));
}

void require_same_radix(unsigned d1, unsigned d2) {
    if (d1 != d2)
        throw InvalidArgument("radix mismatch: " + std::to_string(d1) + " vs " + std::to_string(d2));
}

u128 scaled(u64 num, unsigned d, unsigned e) {
    u128 v = num;
    for (unsigned i = 0; i < e; ++i) {
        if (v > (~u128{0}) / d) throw InputTooLarge("dyadic comparison overflows 128 bits");
        v *= d;
    }
    return v;
}

}  // namespace

u64 ipow(u64 d, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > UINT64_MAX / d)
            throw InputTooLarge(std::to_string(d) + "^" + std::to_string(e) + " overflows 64 bits");
        r *= d;
    }
    return r;
}

cplx unit_root(unsigned d, u64 r) {
    require_radix(d);
    const u64 k = r % d;
    if (k == 0) return {1.0, 0.0};
    if (2 * k == d) return {-1.0, 0.0};
    if (4 * k == d) return {0.0, 1.0};
    if (4 * k == 3 * static_cast<u64>(d)) return {0.0, -1.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d);
    return {std::cos(angle), std::sin(angle)};
}

std::vector<cplx> unit_roots(unsigned d) {
    std::vector<cplx> roots(d);
    for (unsigned r = 0; r < d; ++r) roots[r] = unit_root(d, r);
    return roots;
}

DadicRational::DadicRational(unsigned d, u64 numerator, unsigned scale)
    : d_(d), num_(numerator), scale_(scale) {
    require_radix(d);
    if (num_ == 0) {
        scale_ = 0;
        return;
    }
    while (scale_ > 0 && num_ % d_ == 0) {
        num_ /= d_;
        --scale_;
    }
}

unsigned DadicRational::digit(int n) const {
    const int e = n + static_cast<int>(scale_);
    if (e < 0) return 0;
    u64 v = num_;
    for (int i = 0; i < e && v != 0; ++i) v /= d_;
    return static_cast<unsigned>(v % d_);
}

int DadicRational::end_position() const {
    int n = lowest_position();
    for (u64 v = num_; v != 0; v /= d_) ++n;
    return n;
}

double DadicRational::to_double() const {
    return static_cast<double>(num_) * std::pow(static_cast<double>(d_), -static_cast<double>(scale_));
}

bool operator==(const DadicRational& x, const DadicRational& y) {
    require_same_radix(x.d_, y.d_);
    return x.num_ == y.num_ && x.scale_ == y.scale_;
}

bool operator<(const DadicRational& x, const DadicRational& y) {
    require_same_radix(x.d_, y.d_);
    const unsigned s = std::max(x.scale_, y.scale_);
    return scaled(x.num_, x.d_, s - x.scale_) < scaled(y.num_, y.d_, s - y.scale_);
}

DadicRational group_add(const DadicRational& x, const DadicRational& y) {
    require_same_radix(x.radix(), y.radix());
    const unsigned d = x.radix();
    const unsigned s = std::max(x.scale(), y.scale());
    const int lo = -static_cast<int>(s);
    const int hi = std::max(x.end_position(), y.end_position());
    u64 num = 0;
    for (int n = hi - 1; n >= lo; --n) {
        const unsigned dig = (x.digit(n) + y.digit(n)) % d;
        if (num > (UINT64_MAX - dig) / d) throw InputTooLarge("group_add result overflows 64 bits");
        num = num * d + dig;
    }
    return DadicRational(d, num, s);
}

unsigned character_exponent(const DadicRational& x, const DadicRational& xi) {
    require_same_radix(x.radix(), xi.radix());
    const unsigned d = x.radix();
    // Digits from the lowest position upward; a 64-bit numerator has at most 64.
    std::array<unsigned, 64> xd{}, yd{};
    int xn = 0, yn = 0;
    for (u64 v = x.numerator(); v != 0; v /= d) xd[xn++] = static_cast<unsigned>(v % d);
    for (u64 v = xi.numerator(); v != 0; v /= d) yd[yn++] = static_cast<unsigned>(v % d);
    const int x_lo = x.lowest_position();
    const int y_lo = xi.lowest_position();
    // x_n pairs with xi_{-1-n}.
    const int lo = std::max(x_lo, -(y_lo + yn));
    const int hi = std::min(x_lo + xn, -y_lo);
    u64 sum = 0;
    for (int n = lo; n < hi; ++n) sum += static_cast<u64>(xd[n - x_lo]) * yd[-1 - n - y_lo];
    return static_cast<unsigned>(sum % d);
}

cplx character(const DadicRational& x, const DadicRational& xi) {
    return unit_root(x.radix(), character_exponent(x, xi));
}

DadicInterval::DadicInterval(unsigned d, int exponent, u64 index)
    : d_(d), exponent_(exponent), index_(index) {
    require_radix(d);
}

DadicRational DadicInterval::left() const {
    if (exponent_ >= 0) {
        const u64 w = ipow(d_, static_cast<unsigned>(exponent_));
        if (index_ != 0 && w > UINT64_MAX / index_) throw InputTooLarge("interval endpoint overflows 64 bits");
        return DadicRational(d_, index_ * w, 0);
    }
    return DadicRational(d_, index_, static_cast<unsigned>(-exponent_));
}

DadicRational DadicInterval::right() const {
    return DadicInterval(d_, exponent_, index_ + 1).left();
}

double DadicInterval::length() const {
    return std::pow(static_cast<double>(d_), static_cast<double>(exponent_));
}

bool DadicInterval::contains(const DadicRational& x) const {
    return !(x < left()) && x < right();
}

std::vector<DadicInterval> refine_interval(const DadicInterval& interval) {
    const unsigned d = interval.radix();
    if (interval.index() > UINT64_MAX / d) throw InputTooLarge("refined interval index overflows 64 bits");
    std::vector<DadicInterval> children;
    children.reserve(d);
    for (unsigned j = 0; j < d; ++j)
        children.emplace_back(d, interval.exponent() - 1, interval.index() * d + j);
    return children;
}

Tile::Tile(DadicInterval time, DadicInterval freq) : time_(time), freq_(freq) {
    require_same_radix(time.radix(), freq.radix());
    if (time.exponent() + freq.exponent() != 0)
        throw InvalidArgument("tile requires |I||omega| = 1, got exponents " + std::to_string(time.exponent()) +
                              " and " + std::to_string(freq.exponent()));
}

}  // namespace nlft
