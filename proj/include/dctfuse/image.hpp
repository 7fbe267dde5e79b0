#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dctfuse {

/// Side length of the transform blocks used throughout the library.
inline constexpr int kBlockSize = 8;
inline constexpr int kBlockArea = kBlockSize * kBlockSize;

/// Row-major grayscale image with real-valued intensities (nominal range
/// [0, 255]). Values are never quantized in memory; see write_pgm().
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, double fill = 0.0);
    GrayImage(int width, int height, std::vector<double> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& at(int row, int col) { return data_[index(row, col)]; }
    double at(int row, int col) const { return data_[index(row, col)]; }

    /// Replicate-edge access: coordinates outside the image are clamped.
    double clamped(int row, int col) const noexcept;

    std::span<double> row(int r) { return {data_.data() + index(r, 0), std::size_t(width_)}; }
    std::span<const double> row(int r) const {
        return {data_.data() + index(r, 0), std::size_t(width_)};
    }

    std::span<double> pixels() noexcept { return data_; }
    std::span<const double> pixels() const noexcept { return data_; }

    bool same_shape(const GrayImage& o) const noexcept {
        return width_ == o.width_ && height_ == o.height_;
    }

    bool block_aligned() const noexcept {
        return width_ % kBlockSize == 0 && height_ % kBlockSize == 0;
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t index(int row, int col) const noexcept {
        return std::size_t(row) * std::size_t(width_) + std::size_t(col);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Throws Error(BadDimensions) naming both dimensions when `img` cannot be
/// tiled by 8x8 blocks. `what` prefixes the message (usually a file name).
void require_block_aligned(const GrayImage& img, const char* what = "image");

/// Throws Error(DimensionMismatch) unless all images share a shape.
void require_same_shape(const GrayImage& a, const GrayImage& b, const char* what = "images");

/// Largest absolute per-pixel difference; shapes must match.
double max_abs_diff(const GrayImage& a, const GrayImage& b);

/// Round half up and clamp to [0, 255]; the only quantization point.
unsigned char quantize_u8(double v) noexcept;

/// Copy of `img` with every pixel passed through quantize_u8().
GrayImage quantized(const GrayImage& img);

}  // namespace dctfuse
