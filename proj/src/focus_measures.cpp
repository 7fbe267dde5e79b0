#include "dctfuse/focus_measures.hpp"

#include "dctfuse/error.hpp"
#include "dctfuse/simd/kernels.hpp"

#include <cmath>
#include <string>

namespace dctfuse {
namespace {

struct KernelPair {
    alignas(32) std::array<double, kBlockArea> k{};
    alignas(32) std::array<double, kBlockArea> kt{};
};

KernelPair make_pair(const DerivativeKernel& ker) {
    KernelPair pair;
    for (int a = 0; a < kBlockSize; ++a)
        for (int u = 0; u < kBlockSize; ++u) {
            pair.k[std::size_t(a * kBlockSize + u)] = ker(a, u);
            pair.kt[std::size_t(u * kBlockSize + a)] = ker(a, u);
        }
    return pair;
}

const KernelPair& shared_pair() {
    static const KernelPair pair = make_pair(derivative_kernel8());
    return pair;
}

}  // namespace

void validate(const SpatialSmlParams& p) {
    if (p.step < 1 || p.step >= kBlockSize)
        throw Error(ErrorCode::InvalidArgument,
                    "spatial SML step must be in [1, 7], got " + std::to_string(p.step));
    if (!(p.mlThreshold >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "spatial SML threshold must be >= 0");
}

std::string_view to_string(FocusMeasure m) noexcept {
    switch (m) {
        case FocusMeasure::SmlDct: return "sml-dct";
        case FocusMeasure::VarianceDct: return "variance-dct";
        case FocusMeasure::AcMax: return "ac-max";
        case FocusMeasure::SmlSpatial: return "sml-spatial";
    }
    return "unknown";
}

FocusMeasure parse_focus_measure(std::string_view name) {
    for (auto m : {FocusMeasure::SmlDct, FocusMeasure::VarianceDct, FocusMeasure::AcMax,
                   FocusMeasure::SmlSpatial})
        if (name == to_string(m)) return m;
    throw Error(ErrorCode::InvalidArgument, "unknown focus measure '" + std::string(name) + "'");
}

double sml_dct(const CoeffBlock& cb, const DerivativeKernel& ker) {
    if (ker.n != kBlockSize)
        throw Error(ErrorCode::InvalidArgument, "sml_dct: kernel must be built for n = 8");
    const auto& simd = simd::active();
    const KernelPair local = &ker == &derivative_kernel8() ? KernelPair{} : make_pair(ker);
    const KernelPair& kp = &ker == &derivative_kernel8() ? shared_pair() : local;
    alignas(32) std::array<double, kBlockArea> gx;
    alignas(32) std::array<double, kBlockArea> gy;
    simd.matmul8(kp.k.data(), cb.data(), gx.data());   // G_x(a,b) = sum_u k(a,u) G(u,b)
    simd.matmul8(cb.data(), kp.kt.data(), gy.data());  // G_y(a,b) = sum_v k(b,v) G(a,v)
    return simd.sum_abs2(gx.data(), gy.data(), kBlockArea);
}

double sml_dct(const CoeffBlock& cb) { return sml_dct(cb, derivative_kernel8()); }

double variance_dct(const CoeffBlock& cb) {
    CoeffBlock ac = cb;
    ac(0, 0) = 0.0;
    return simd::active().sum_squares(ac.data(), kBlockArea) / kBlockArea;
}

double ac_max(const CoeffBlock& cb) {
    CoeffBlock ac = cb;
    ac(0, 0) = 0.0;
    return simd::active().max_abs(ac.data(), kBlockArea);
}

double ml_spatial(const GrayImage& img, int row, int col, int step) {
    if (step < 1) throw Error(ErrorCode::InvalidArgument, "ml_spatial: step must be >= 1");
    if (row - step < 0 || row + step >= img.height() || col - step < 0 || col + step >= img.width())
        throw Error(ErrorCode::InvalidArgument,
                    "ml_spatial: neighbourhood of (" + std::to_string(row) + ", " +
                        std::to_string(col) + ") with step " + std::to_string(step) +
                        " leaves the image");
    return ml_spatial_clamped(img, row, col, step);
}

double ml_spatial_clamped(const GrayImage& img, int row, int col, int step) noexcept {
    const double c2 = 2.0 * img.clamped(row, col);
    return std::abs(c2 - img.clamped(row - step, col) - img.clamped(row + step, col)) +
           std::abs(c2 - img.clamped(row, col - step) - img.clamped(row, col + step));
}

double sml_spatial(const GrayImage& img, int blockRow, int blockCol, const SpatialSmlParams& p) {
    validate(p);
    const int r0 = blockRow * kBlockSize;
    const int c0 = blockCol * kBlockSize;
    if (blockRow < 0 || blockCol < 0 || r0 + kBlockSize > img.height() ||
        c0 + kBlockSize > img.width())
        throw Error(ErrorCode::InvalidArgument, "sml_spatial: block outside the image");
    double sum = 0.0;
    for (int r = r0; r < r0 + kBlockSize; ++r) {
        for (int c = c0; c < c0 + kBlockSize; ++c) {
            const double ml = ml_spatial_clamped(img, r, c, p.step);
            if (ml >= p.mlThreshold) sum += ml;
        }
    }
    return sum;
}

FocusMap focus_map(const CoeffBlockGrid& grid, FocusMeasure m) {
    if (m == FocusMeasure::SmlSpatial)
        throw Error(ErrorCode::InvalidArgument, "sml-spatial needs the pixel-domain image");
    FocusMap out(grid.rows, grid.cols);
    const DerivativeKernel& ker = derivative_kernel8();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const CoeffBlock& cb = grid.blocks[i];
        switch (m) {
            case FocusMeasure::SmlDct: out.values[i] = sml_dct(cb, ker); break;
            case FocusMeasure::VarianceDct: out.values[i] = variance_dct(cb); break;
            case FocusMeasure::AcMax: out.values[i] = ac_max(cb); break;
            case FocusMeasure::SmlSpatial: break;
        }
    }
    return out;
}

FocusMap focus_map(const CoeffBlockGrid& grid, const GrayImage& pixels, FocusMeasure m,
                   const SpatialSmlParams& p) {
    if (m != FocusMeasure::SmlSpatial) return focus_map(grid, m);
    if (pixels.width() != grid.cols * kBlockSize || pixels.height() != grid.rows * kBlockSize)
        throw Error(ErrorCode::DimensionMismatch, "focus_map: pixels do not match block grid");
    validate(p);
    FocusMap out(grid.rows, grid.cols);
    for (int r = 0; r < grid.rows; ++r)
        for (int c = 0; c < grid.cols; ++c) out.at(r, c) = sml_spatial(pixels, r, c, p);
    return out;
}

}  // namespace dctfuse
