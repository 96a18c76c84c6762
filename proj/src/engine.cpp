#include "nlft/engine.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nlft/errors.hpp"
#include "nlft/parallel.hpp"

namespace nlft {

namespace {

std::size_t count_of(unsigned d, int exponent) {
    if (exponent < 0) throw InvalidArgument("negative cell count exponent " + std::to_string(exponent));
    return static_cast<std::size_t>(ipow(d, static_cast<unsigned>(exponent)));
}

void check_resolution(const StepFunction& f, int freq_exponent) {
    if (freq_exponent < f.cell_exponent())
        throw ResolutionMismatch("frequency exponent " + std::to_string(freq_exponent) +
                                 " is below the cell exponent " + std::to_string(f.cell_exponent()));
}

}  // namespace

StepFunction::StepFunction(unsigned d, int cell_exponent, int support_exponent, std::vector<cplx> values)
    : d_(d), cell_exp_(cell_exponent), support_exp_(support_exponent), values_(std::move(values)) {
    if (d < 2) throw InvalidArgument("radix must be at least 2, got " + std::to_string(d));
    if (support_exponent + cell_exponent < 0)
        throw InvalidArgument("support_exponent + cell_exponent must be nonnegative");
    const std::size_t expected = count_of(d, support_exponent + cell_exponent);
    if (values_.size() != expected)
        throw InvalidArgument("expected d^(support_exponent + cell_exponent) = " + std::to_string(expected) +
                              " values, got " + std::to_string(values_.size()));
    for (const auto& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InvalidArgument("non-finite function value");
    const double l1 = l1_norm();
    if (!(l1 < 700.0)) throw InputTooLarge("||f||_1 = " + std::to_string(l1) + " exceeds 700");
}

StepFunction StepFunction::zero(unsigned d, int cell_exponent, int support_exponent) {
    return StepFunction(d, cell_exponent, support_exponent,
                        std::vector<cplx>(count_of(d, support_exponent + cell_exponent)));
}

double StepFunction::cell_width() const noexcept {
    return std::pow(static_cast<double>(d_), -static_cast<double>(cell_exp_));
}

double StepFunction::lp_norm(double p) const {
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : values_) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw InvalidArgument("lp_norm requires p >= 1");
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (const auto& v : values_) s += std::pow(std::abs(v) / m, p);
    return m * std::pow(s * cell_width(), 1.0 / p);
}

StepFunction StepFunction::scaled(cplx s) const {
    std::vector<cplx> v(values_);
    for (auto& x : v) x *= s;
    return StepFunction(d_, cell_exp_, support_exp_, std::move(v));
}

std::vector<cplx> StepFunction::resampled(int freq_exponent) const {
    check_resolution(*this, freq_exponent);
    const std::size_t rep = count_of(d_, freq_exponent - cell_exp_);
    std::vector<cplx> out;
    out.reserve(values_.size() * rep);
    for (const auto& v : values_) out.insert(out.end(), rep, v);
    return out;
}

TilePyramid::TilePyramid(unsigned d, int support_exponent, int freq_exponent, std::vector<TileLayer> layers)
    : d_(d), nx_(support_exponent), nxi_(freq_exponent), layers_(std::move(layers)) {
    if (layers_.size() != static_cast<std::size_t>(nx_ + nxi_ + 1))
        throw InvalidArgument("pyramid needs one layer per scale");
}

const TileLayer& TilePyramid::layer(int scale) const {
    if (scale < min_scale() || scale > max_scale())
        throw InvalidArgument("scale " + std::to_string(scale) + " outside pyramid");
    return layers_[static_cast<std::size_t>(scale - min_scale())];
}

Tile TilePyramid::tile(int scale, std::size_t column, std::size_t row) const {
    return Tile(DadicInterval(d_, scale, column), DadicInterval(d_, -scale, row));
}

TileLayer build_base_layer(const StepFunction& f, int freq_exponent) {
    const auto cells = f.resampled(freq_exponent);
    const double h = std::pow(static_cast<double>(f.radix()), -static_cast<double>(freq_exponent));
    TileLayer layer;
    layer.scale = -freq_exponent;
    layer.columns = cells.size();
    layer.rows = 1;
    layer.tiles.reserve(cells.size());
    for (const auto& w : cells) layer.tiles.push_back(cell_transfer(w, h));
    return layer;
}

TileLayer butterfly_step(const TileLayer& layer, unsigned d, unsigned threads) {
    if (layer.columns < d || layer.columns % d != 0)
        throw InvalidArgument("butterfly_step needs a column count divisible by d");
    const auto twiddle = unit_roots(d);
    TileLayer out;
    out.scale = layer.scale + 1;
    out.columns = layer.columns / d;
    out.rows = layer.rows * d;
    out.tiles.resize(layer.tiles.size());
    parallel_for(out.columns, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            for (std::size_t r = 0; r < layer.rows; ++r) {
                for (unsigned k = 0; k < d; ++k) {
                    Su11 acc = Su11::identity();
                    for (unsigned j = 0; j < d; ++j) {
                        const Su11& p = layer.at(c * d + j, r);
                        acc = compose(acc, Su11{p.a, p.b * twiddle[(j * k) % d]});
                    }
                    out.at(c, r * d + k) = acc;
                }
            }
        }
    });
    return out;
}

TilePyramid transform(const StepFunction& f, int freq_exponent, unsigned threads) {
    std::vector<TileLayer> layers;
    layers.push_back(build_base_layer(f, freq_exponent));
    for (int n = -freq_exponent; n < f.support_exponent(); ++n)
        layers.push_back(butterfly_step(layers.back(), f.radix(), threads));
    return TilePyramid(f.radix(), f.support_exponent(), freq_exponent, std::move(layers));
}

TileLayer transform_top(const StepFunction& f, int freq_exponent, unsigned threads) {
    TileLayer layer = build_base_layer(f, freq_exponent);
    for (int n = -freq_exponent; n < f.support_exponent(); ++n) layer = butterfly_step(layer, f.radix(), threads);
    return layer;
}

DadicRational grid_frequency(unsigned d, int support_exponent, u64 k) {
    return DadicInterval(d, -support_exponent, k).left();
}

Su11 direct_oracle(const StepFunction& f, int freq_exponent, const DadicRational& xi) {
    check_resolution(f, freq_exponent);
    return direct_oracle(f, freq_exponent, xi, DadicInterval(f.radix(), f.support_exponent(), 0));
}

Su11 direct_oracle(const StepFunction& f, int freq_exponent, const DadicRational& xi, const DadicInterval& support) {
    check_resolution(f, freq_exponent);
    const unsigned d = f.radix();
    if (xi.radix() != d || support.radix() != d) throw InvalidArgument("radix mismatch in direct_oracle");
    if (!(xi < DadicInterval(d, freq_exponent, 1).left()))
        throw InvalidArgument("frequency outside [0, d^freq_exponent)");
    for (int n = xi.lowest_position(); n < -f.support_exponent(); ++n)
        if (xi.digit(n) != 0) throw InvalidArgument("frequency has digits finer than d^(-support_exponent)");
    if (support.exponent() < -freq_exponent || support.exponent() > f.support_exponent())
        throw InvalidArgument("restriction interval must be between a cell and the full support");
    if (support.index() >= count_of(d, f.support_exponent() - support.exponent()))
        throw InvalidArgument("restriction interval outside the support");

    const auto cells = f.resampled(freq_exponent);
    const double h = std::pow(static_cast<double>(d), -static_cast<double>(freq_exponent));
    const std::size_t per = count_of(d, support.exponent() + freq_exponent);
    const std::size_t first = static_cast<std::size_t>(support.index()) * per;
    Su11 acc = Su11::identity();
    for (std::size_t m = first; m < first + per; ++m) {
        const DadicRational x = DadicInterval(d, -freq_exponent, m).left();
        acc = compose(acc, cell_transfer(cells[m] * character(x, xi), h));
    }
    return acc;
}

std::vector<cplx> linear_transform(const StepFunction& f, int freq_exponent, unsigned threads) {
    const unsigned d = f.radix();
    const double h = std::pow(static_cast<double>(d), -static_cast<double>(freq_exponent));
    std::vector<cplx> cur = f.resampled(freq_exponent);
    for (auto& v : cur) v *= h;
    const auto twiddle = unit_roots(d);
    std::size_t columns = cur.size();
    std::size_t rows = 1;
    std::vector<cplx> next(cur.size());
    for (int n = -freq_exponent; n < f.support_exponent(); ++n) {
        const std::size_t out_cols = columns / d;
        parallel_for(out_cols, threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t c = begin; c < end; ++c)
                for (std::size_t r = 0; r < rows; ++r)
                    for (unsigned k = 0; k < d; ++k) {
                        cplx s = 0.0;
                        for (unsigned j = 0; j < d; ++j) s += cur[(c * d + j) * rows + r] * twiddle[(j * k) % d];
                        next[c * rows * d + r * d + k] = s;
                    }
        });
        std::swap(cur, next);
        columns = out_cols;
        rows *= d;
    }
    return cur;
}

}  // namespace nlft
