#pragma once

// Test-only reference computations. Nothing here calls into the library's
// transform or focus-measure code, so each oracle is an independent route to
// the values the library produces.

#include "dctfuse/block_transform.hpp"
#include "dctfuse/image.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace oracle {

using dctfuse::CoeffBlock;
using dctfuse::GrayImage;
using dctfuse::PixelBlock;

inline constexpr int N = 8;
inline constexpr double kPi = std::numbers::pi;

inline double c(int v) { return v == 0 ? 1.0 / std::sqrt(2.0) : 1.0; }

/// Direct double summation of the separable orthonormal DCT-II basis.
inline CoeffBlock dct2(const PixelBlock& x) {
    CoeffBlock g;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            double acc = 0.0;
            for (int m = 0; m < N; ++m)
                for (int n = 0; n < N; ++n)
                    acc += x(m, n) * std::cos((2 * m + 1) * a * kPi / (2.0 * N)) *
                           std::cos((2 * n + 1) * b * kPi / (2.0 * N));
            g(a, b) = (2.0 / N) * c(a) * c(b) * acc;
        }
    return g;
}

/// Inner sum of the second-derivative operator, evaluated from scratch.
inline double kernel_entry(int alpha, int u) {
    double acc = 0.0;
    for (int m = 0; m < N; ++m)
        acc += 2.0 * (u * kPi) * (u * kPi) / (N * N * N) * c(alpha) * c(u) *
               std::cos((2 * m + 1) * alpha * kPi / (2.0 * N)) *
               std::cos((2 * m + 1) * u * kPi / (2.0 * N));
    return acc;
}

/// SML with both inner sums expanded inside the outer sums (no precomputed
/// kernel): sum |G_x| + |G_y|.
inline double sml_bruteforce(const CoeffBlock& g) {
    double total = 0.0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            double gx = 0.0, gy = 0.0;
            for (int u = 0; u < N; ++u) gx += g(u, b) * kernel_entry(a, u);
            for (int v = 0; v < N; ++v) gy += g(a, v) * kernel_entry(b, v);
            total += std::abs(gx) + std::abs(gy);
        }
    return total;
}

/// Diagonal closed form: sum [(a pi/8)^2 + (b pi/8)^2] |G(a,b)|.
inline double sml_closed_form(const CoeffBlock& g) {
    double total = 0.0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            const double wa = a * kPi / N;
            const double wb = b * kPi / N;
            total += (wa * wa + wb * wb) * std::abs(g(a, b));
        }
    return total;
}

/// Population variance of 64 pixels, two-pass.
inline double spatial_variance(const PixelBlock& x) {
    double mean = 0.0;
    for (double v : x.v) mean += v;
    mean /= x.v.size();
    double var = 0.0;
    for (double v : x.v) var += (v - mean) * (v - mean);
    return var / x.v.size();
}

inline PixelBlock random_block(std::mt19937_64& rng, double lo = 0.0, double hi = 255.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    PixelBlock b;
    for (double& v : b.v) v = d(rng);
    return b;
}

inline CoeffBlock random_coeffs(std::mt19937_64& rng, double scale = 100.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    CoeffBlock b;
    for (double& v : b.v) v = d(rng);
    return b;
}

inline GrayImage random_image(std::mt19937_64& rng, int w, int h, bool integral = true) {
    std::uniform_real_distribution<double> d(0.0, 255.0);
    GrayImage img(w, h);
    for (double& v : img.pixels()) v = integral ? std::floor(d(rng) + 0.5) : d(rng);
    return img;
}

/// Unit-amplitude +/-1 checkerboard.
inline GrayImage checkerboard(int w, int h, double lo = -1.0, double hi = 1.0) {
    GrayImage img(w, h);
    for (int r = 0; r < h; ++r)
        for (int col = 0; col < w; ++col) img.at(r, col) = ((r + col) % 2 == 0) ? hi : lo;
    return img;
}

/// Direct (unseparated, unpadded-buffer) correlation with clamp-to-edge.
template <class Kernel>
GrayImage correlate(const GrayImage& img, const Kernel& k) {
    GrayImage out(img.width(), img.height());
    for (int r = 0; r < img.height(); ++r)
        for (int col = 0; col < img.width(); ++col) {
            double acc = 0.0;
            for (int dy = -k.radius; dy <= k.radius; ++dy)
                for (int dx = -k.radius; dx <= k.radius; ++dx)
                    acc += k.at(dy, dx) * img.clamped(r + dy, col + dx);
            out.at(r, col) = acc;
        }
    return out;
}

}  // namespace oracle
