#pragma once

#include "dctfuse/image.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace dctfuse {

/// 8x8 row-major block of doubles. The tag keeps pixel-domain and
/// coefficient-domain blocks from being mixed up at call sites.
template <class Tag>
struct Block8 {
    alignas(32) std::array<double, kBlockArea> v{};

    double& operator()(int r, int c) noexcept { return v[std::size_t(r * kBlockSize + c)]; }
    double operator()(int r, int c) const noexcept { return v[std::size_t(r * kBlockSize + c)]; }

    double* data() noexcept { return v.data(); }
    const double* data() const noexcept { return v.data(); }

    friend bool operator==(const Block8&, const Block8&) = default;
};

struct PixelTag {};
struct CoeffTag {};

using PixelBlock = Block8<PixelTag>;
/// Orthonormal DCT-II coefficients G(alpha, beta); alpha indexes rows.
using CoeffBlock = Block8<CoeffTag>;

template <class T>
struct BlockGrid {
    int rows = 0;
    int cols = 0;
    std::vector<T> blocks;  // row-major

    BlockGrid() = default;
    BlockGrid(int r, int c) : rows(r), cols(c), blocks(std::size_t(r) * std::size_t(c)) {}

    T& at(int r, int c) { return blocks[std::size_t(r) * std::size_t(cols) + std::size_t(c)]; }
    const T& at(int r, int c) const {
        return blocks[std::size_t(r) * std::size_t(cols) + std::size_t(c)];
    }
    std::size_t size() const noexcept { return blocks.size(); }

    template <class U>
    bool same_shape(const BlockGrid<U>& o) const noexcept {
        return rows == o.rows && cols == o.cols;
    }
};

using PixelBlockGrid = BlockGrid<PixelBlock>;
using CoeffBlockGrid = BlockGrid<CoeffBlock>;

/// Second-derivative operator on DCT coefficients. Entry (alpha, u) is the
/// input-independent inner sum
///   sum_m 2(u*pi)^2/N^3 * c(alpha) c(u) cos((2m+1)alpha*pi/2N) cos((2m+1)u*pi/2N).
/// Applying it down the columns of G yields the DCT of d2I/dx2, along the
/// rows the DCT of d2I/dy2. The analytic minus sign is dropped; only
/// magnitudes are consumed downstream.
struct DerivativeKernel {
    int n = 0;
    std::vector<double> k;  // n*n, row-major in alpha

    double operator()(int alpha, int u) const noexcept {
        return k[std::size_t(alpha) * std::size_t(n) + std::size_t(u)];
    }
};

/// c(0) = 1/sqrt(2), c(v) = 1 otherwise.
double dct_norm(int v) noexcept;

/// Orthonormal DCT-II matrix C(u, m) = sqrt(2/n) c(u) cos((2m+1)u*pi/2n).
std::vector<double> dct_matrix(int n);

PixelBlockGrid partition_blocks(const GrayImage& img);

/// Inverse of partition_blocks(). No rounding or clamping happens here.
GrayImage assemble_image(const PixelBlockGrid& grid);

/// Row-of-blocks form; throws Error(InvalidArgument) for empty or ragged input.
GrayImage assemble_image(const std::vector<std::vector<PixelBlock>>& rows);

CoeffBlock dct2_forward(const PixelBlock& block);
PixelBlock dct2_inverse(const CoeffBlock& cb);

/// partition + per-block forward DCT. Requires block-aligned dimensions.
CoeffBlockGrid forward_transform(const GrayImage& img);

/// Per-block inverse DCT + assemble.
GrayImage inverse_transform(const CoeffBlockGrid& grid);

/// Literal summation of the kernel definition; n >= 2.
DerivativeKernel build_derivative_kernel(int n);

/// Process-wide n = 8 kernel, built on first use and never modified.
const DerivativeKernel& derivative_kernel8();

}  // namespace dctfuse
