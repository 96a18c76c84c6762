#pragma once

// The Cantor-group scattering transform.
//
// A step function supported in [0, d^Nx) is cut into cells of width
// d^(-Nxi); each cell contributes the exact constant-potential transfer
// matrix. The base layer holds one tile per cell (a single frequency row at
// xi = 0). Each butterfly step merges d adjacent columns and splits every
// frequency row into d, so after Nx + Nxi steps the single remaining column
// holds G(xi) at xi = k d^(-Nx) for 0 <= xi < d^Nxi.
//
// Layers are stored column-major: entry (column, row) at column * rows + row.

#include <cstddef>
#include <vector>

#include "nlft/cantor.hpp"
#include "nlft/su11.hpp"

namespace nlft {

class StepFunction {
public:
    // values.size() must be d^(support_exponent + cell_exponent); cells have
    // width d^(-cell_exponent) and ascend in x.
    StepFunction(unsigned d, int cell_exponent, int support_exponent, std::vector<cplx> values);

    static StepFunction zero(unsigned d, int cell_exponent, int support_exponent);

    unsigned radix() const noexcept { return d_; }
    int cell_exponent() const noexcept { return cell_exp_; }
    int support_exponent() const noexcept { return support_exp_; }
    const std::vector<cplx>& values() const noexcept { return values_; }

    double cell_width() const noexcept;
    // ||f||_p for p >= 1; p = infinity gives the sup norm.
    double lp_norm(double p) const;
    double l1_norm() const { return lp_norm(1.0); }
    double l2_norm() const { return lp_norm(2.0); }

    // Same function with every value multiplied by s.
    StepFunction scaled(cplx s) const;

    // Values on cells of width d^(-freq_exponent), each original value
    // repeated d^(freq_exponent - cell_exponent) times.
    std::vector<cplx> resampled(int freq_exponent) const;

private:
    unsigned d_;
    int cell_exp_;
    int support_exp_;
    std::vector<cplx> values_;
};

struct TileLayer {
    int scale = 0;
    std::size_t columns = 0;
    std::size_t rows = 0;
    std::vector<Su11> tiles;

    const Su11& at(std::size_t column, std::size_t row) const { return tiles[column * rows + row]; }
    Su11& at(std::size_t column, std::size_t row) { return tiles[column * rows + row]; }
};

class TilePyramid {
public:
    TilePyramid(unsigned d, int support_exponent, int freq_exponent, std::vector<TileLayer> layers);

    unsigned radix() const noexcept { return d_; }
    int support_exponent() const noexcept { return nx_; }
    int freq_exponent() const noexcept { return nxi_; }

    // Scales run from -freq_exponent (base) to support_exponent (top).
    int min_scale() const noexcept { return -nxi_; }
    int max_scale() const noexcept { return nx_; }
    const TileLayer& layer(int scale) const;
    const std::vector<TileLayer>& layers() const noexcept { return layers_; }
    const TileLayer& top() const { return layers_.back(); }

    // The tile I x omega stored at (scale, column, row).
    Tile tile(int scale, std::size_t column, std::size_t row) const;

private:
    unsigned d_;
    int nx_;
    int nxi_;
    std::vector<TileLayer> layers_;
};

// Scale -Nxi layer: one row, one column per cell of width d^(-Nxi).
TileLayer build_base_layer(const StepFunction& f, int freq_exponent);

// Merge groups of d columns; row omega splits into d rows with twiddled
// ordered products.
TileLayer butterfly_step(const TileLayer& layer, unsigned d, unsigned threads = 1);

// Full pyramid from scale -Nxi to Nx.
TilePyramid transform(const StepFunction& f, int freq_exponent, unsigned threads = 1);

// Only the top layer; keeps two layers in memory at a time.
TileLayer transform_top(const StepFunction& f, int freq_exponent, unsigned threads = 1);

// Grid frequency k d^(-Nx) of top-layer row k.
DadicRational grid_frequency(unsigned d, int support_exponent, u64 k);

// Reference value G(xi): ordered product of exact cell solutions with the
// character evaluated at each cell's left endpoint. xi must lie in
// [0, d^Nxi) with no digits finer than d^(-Nx).
Su11 direct_oracle(const StepFunction& f, int freq_exponent, const DadicRational& xi);

// Same, for f restricted to the d-adic interval `support` (|support| >= d^(-Nxi)).
Su11 direct_oracle(const StepFunction& f, int freq_exponent, const DadicRational& xi,
                   const DadicInterval& support);

// First-order term of b: d^(-Nxi) sum_m f_m E_d(x_m, xi) on the top-layer
// grid, computed with the linear butterfly (a radix-d Chrestenson transform).
std::vector<cplx> linear_transform(const StepFunction& f, int freq_exponent, unsigned threads = 1);

}  // namespace nlft
