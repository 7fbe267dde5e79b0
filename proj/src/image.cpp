#include "dctfuse/image.hpp"

#include "dctfuse/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dctfuse {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::DimensionMismatch: return "dimension-mismatch";
        case ErrorCode::BadDimensions: return "bad-dimensions";
        case ErrorCode::Io: return "io";
        case ErrorCode::UnsupportedFormat: return "unsupported-format";
        case ErrorCode::MalformedHeader: return "malformed-header";
        case ErrorCode::BadMaxval: return "bad-maxval";
    }
    return "unknown";
}

GrayImage::GrayImage(int width, int height, double fill) : width_(width), height_(height) {
    if (width <= 0 || height <= 0)
        throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
    data_.assign(std::size_t(width) * std::size_t(height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width <= 0 || height <= 0)
        throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
    if (data_.size() != std::size_t(width) * std::size_t(height))
        throw Error(ErrorCode::InvalidArgument, "pixel count does not match width*height");
}

double GrayImage::clamped(int row, int col) const noexcept {
    row = std::clamp(row, 0, height_ - 1);
    col = std::clamp(col, 0, width_ - 1);
    return data_[index(row, col)];
}

void require_block_aligned(const GrayImage& img, const char* what) {
    if (img.block_aligned()) return;
    throw Error(ErrorCode::BadDimensions,
                std::string(what) + ": dimensions " + std::to_string(img.width()) + "x" +
                    std::to_string(img.height()) + " are not multiples of " +
                    std::to_string(kBlockSize));
}

void require_same_shape(const GrayImage& a, const GrayImage& b, const char* what) {
    if (a.same_shape(b)) return;
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
}

double max_abs_diff(const GrayImage& a, const GrayImage& b) {
    require_same_shape(a, b);
    double m = 0.0;
    auto pa = a.pixels();
    auto pb = b.pixels();
    for (std::size_t i = 0; i < pa.size(); ++i) m = std::max(m, std::abs(pa[i] - pb[i]));
    return m;
}

unsigned char quantize_u8(double v) noexcept {
    if (!(v > 0.0)) return 0;  // also maps NaN to 0
    if (v >= 255.0) return 255;
    return static_cast<unsigned char>(std::floor(v + 0.5));
}

GrayImage quantized(const GrayImage& img) {
    GrayImage out = img;
    for (double& p : out.pixels()) p = quantize_u8(p);
    return out;
}

}  // namespace dctfuse
