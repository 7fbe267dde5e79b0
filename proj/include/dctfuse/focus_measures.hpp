#pragma once

#include "dctfuse/block_transform.hpp"
#include "dctfuse/grid.hpp"
#include "dctfuse/image.hpp"

#include <limits>
#include <string_view>
#include <vector>

namespace dctfuse {

/// One non-negative activity value per block.
struct FocusMap : ValueGrid<double> {
    using ValueGrid<double>::ValueGrid;
};

/// Parameters of the finite-difference (pixel-domain) modified Laplacian.
struct SpatialSmlParams {
    int step = 1;               // 1 <= step < 8
    double mlThreshold = 0.0;   // ML values below this are not summed
};

void validate(const SpatialSmlParams& p);

enum class FocusMeasure { SmlDct, VarianceDct, AcMax, SmlSpatial };

std::string_view to_string(FocusMeasure m) noexcept;

/// Parses "sml-dct", "variance-dct", "ac-max", "sml-spatial"; throws
/// Error(InvalidArgument) otherwise.
FocusMeasure parse_focus_measure(std::string_view name);

// ---------------------------------------------------------------------------
// Coefficient-domain measures

/// Sum of modified Laplacian from DCT coefficients: G_x = K G (down
/// columns), G_y = G K^T (along rows), result sum |G_x| + |G_y|.
/// `ker` must be an n = 8 kernel.
double sml_dct(const CoeffBlock& cb, const DerivativeKernel& ker);
double sml_dct(const CoeffBlock& cb);  // shared n = 8 kernel

/// Pixel variance via AC energy: sum_{(a,b) != (0,0)} G(a,b)^2 / 64.
double variance_dct(const CoeffBlock& cb);

/// Largest |G(a,b)| over AC coefficients.
double ac_max(const CoeffBlock& cb);

// ---------------------------------------------------------------------------
// Pixel-domain modified Laplacian

/// |2I(r,c) - I(r-s,c) - I(r+s,c)| + |2I(r,c) - I(r,c-s) - I(r,c+s)|.
/// Throws Error(InvalidArgument) when the neighbourhood leaves the image.
double ml_spatial(const GrayImage& img, int row, int col, int step);

/// Same, with replicate-edge clamping instead of a bounds check.
double ml_spatial_clamped(const GrayImage& img, int row, int col, int step) noexcept;

/// Thresholded sum of ML over block (blockRow, blockCol) of `img`, using the
/// surrounding image as context (clamped at the border).
double sml_spatial(const GrayImage& img, int blockRow, int blockCol, const SpatialSmlParams& p);

// ---------------------------------------------------------------------------
// Whole-grid evaluation

FocusMap focus_map(const CoeffBlockGrid& grid, FocusMeasure m);

/// Required for SmlSpatial, which needs pixels; coefficient measures use `grid`.
FocusMap focus_map(const CoeffBlockGrid& grid, const GrayImage& pixels, FocusMeasure m,
                   const SpatialSmlParams& p);

}  // namespace dctfuse
