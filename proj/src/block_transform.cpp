#include "dctfuse/block_transform.hpp"

#include "dctfuse/error.hpp"
#include "dctfuse/simd/kernels.hpp"

#include <cmath>
#include <numbers>

namespace dctfuse {
namespace {

struct DctMatrices {
    alignas(32) std::array<double, kBlockArea> c{};   // C(u, m)
    alignas(32) std::array<double, kBlockArea> ct{};  // transpose
};

const DctMatrices& dct8() {
    static const DctMatrices m = [] {
        DctMatrices out;
        auto c = dct_matrix(kBlockSize);
        for (int u = 0; u < kBlockSize; ++u) {
            for (int x = 0; x < kBlockSize; ++x) {
                out.c[std::size_t(u * kBlockSize + x)] = c[std::size_t(u * kBlockSize + x)];
                out.ct[std::size_t(x * kBlockSize + u)] = c[std::size_t(u * kBlockSize + x)];
            }
        }
        return out;
    }();
    return m;
}

}  // namespace

double dct_norm(int v) noexcept { return v == 0 ? 1.0 / std::numbers::sqrt2 : 1.0; }

std::vector<double> dct_matrix(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "dct_matrix: n must be >= 1");
    std::vector<double> c(std::size_t(n) * std::size_t(n));
    const double scale = std::sqrt(2.0 / n);
    for (int u = 0; u < n; ++u)
        for (int m = 0; m < n; ++m)
            c[std::size_t(u * n + m)] =
                scale * dct_norm(u) * std::cos((2 * m + 1) * u * std::numbers::pi / (2.0 * n));
    return c;
}

PixelBlockGrid partition_blocks(const GrayImage& img) {
    require_block_aligned(img);
    PixelBlockGrid grid(img.height() / kBlockSize, img.width() / kBlockSize);
    for (int br = 0; br < grid.rows; ++br) {
        for (int bc = 0; bc < grid.cols; ++bc) {
            PixelBlock& b = grid.at(br, bc);
            for (int r = 0; r < kBlockSize; ++r)
                for (int c = 0; c < kBlockSize; ++c)
                    b(r, c) = img.at(br * kBlockSize + r, bc * kBlockSize + c);
        }
    }
    return grid;
}

GrayImage assemble_image(const PixelBlockGrid& grid) {
    if (grid.rows <= 0 || grid.cols <= 0 ||
        grid.blocks.size() != std::size_t(grid.rows) * std::size_t(grid.cols))
        throw Error(ErrorCode::InvalidArgument, "assemble_image: grid is empty or ragged");
    GrayImage img(grid.cols * kBlockSize, grid.rows * kBlockSize);
    for (int br = 0; br < grid.rows; ++br) {
        for (int bc = 0; bc < grid.cols; ++bc) {
            const PixelBlock& b = grid.at(br, bc);
            for (int r = 0; r < kBlockSize; ++r)
                for (int c = 0; c < kBlockSize; ++c)
                    img.at(br * kBlockSize + r, bc * kBlockSize + c) = b(r, c);
        }
    }
    return img;
}

GrayImage assemble_image(const std::vector<std::vector<PixelBlock>>& rows) {
    if (rows.empty() || rows.front().empty())
        throw Error(ErrorCode::InvalidArgument, "assemble_image: grid is empty");
    PixelBlockGrid grid(int(rows.size()), int(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size())
            throw Error(ErrorCode::InvalidArgument,
                        "assemble_image: ragged grid (row " + std::to_string(r) + " has " +
                            std::to_string(rows[r].size()) + " blocks, expected " +
                            std::to_string(rows.front().size()) + ")");
        for (std::size_t c = 0; c < rows[r].size(); ++c) grid.at(int(r), int(c)) = rows[r][c];
    }
    return assemble_image(grid);
}

// G = C X C^T, computed as two 8x8 products.
CoeffBlock dct2_forward(const PixelBlock& block) {
    const auto& k = simd::active();
    const auto& m = dct8();
    alignas(32) std::array<double, kBlockArea> tmp;
    CoeffBlock out;
    k.matmul8(m.c.data(), block.data(), tmp.data());
    k.matmul8(tmp.data(), m.ct.data(), out.data());
    return out;
}

// X = C^T G C.
PixelBlock dct2_inverse(const CoeffBlock& cb) {
    const auto& k = simd::active();
    const auto& m = dct8();
    alignas(32) std::array<double, kBlockArea> tmp;
    PixelBlock out;
    k.matmul8(m.ct.data(), cb.data(), tmp.data());
    k.matmul8(tmp.data(), m.c.data(), out.data());
    return out;
}

CoeffBlockGrid forward_transform(const GrayImage& img) {
    PixelBlockGrid px = partition_blocks(img);
    CoeffBlockGrid out(px.rows, px.cols);
    for (std::size_t i = 0; i < px.size(); ++i) out.blocks[i] = dct2_forward(px.blocks[i]);
    return out;
}

GrayImage inverse_transform(const CoeffBlockGrid& grid) {
    PixelBlockGrid px(grid.rows, grid.cols);
    for (std::size_t i = 0; i < grid.size(); ++i) px.blocks[i] = dct2_inverse(grid.blocks[i]);
    return assemble_image(px);
}

DerivativeKernel build_derivative_kernel(int n) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "build_derivative_kernel: n must be >= 2");
    DerivativeKernel ker;
    ker.n = n;
    ker.k.assign(std::size_t(n) * std::size_t(n), 0.0);
    const double pi = std::numbers::pi;
    const double n3 = double(n) * n * n;
    for (int alpha = 0; alpha < n; ++alpha) {
        for (int u = 0; u < n; ++u) {
            const double scale = 2.0 * (u * pi) * (u * pi) / n3 * dct_norm(alpha) * dct_norm(u);
            double acc = 0.0;
            for (int m = 0; m < n; ++m)
                acc += std::cos((2 * m + 1) * alpha * pi / (2.0 * n)) *
                       std::cos((2 * m + 1) * u * pi / (2.0 * n));
            ker.k[std::size_t(alpha * n + u)] = scale * acc;
        }
    }
    return ker;
}

const DerivativeKernel& derivative_kernel8() {
    static const DerivativeKernel ker = build_derivative_kernel(kBlockSize);
    return ker;
}

}  // namespace dctfuse
