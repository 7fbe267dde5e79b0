#pragma once

#include "dctfuse/image.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dctfuse {

// SSIM parameterisation: 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
// K2 = 0.03, L = 255, mean over every window fully inside the image.
struct SsimParams {
    int window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamicRange = 255.0;
};

/// Mean structural similarity. Both images must share a shape of at least
/// window x window pixels.
double ssim(const GrayImage& ref, const GrayImage& test, const SsimParams& p = {});

/// Shannon entropy (bits) of the 256-bin histogram of quantize_u8(img).
double entropy(const GrayImage& img);

/// I(X;Y) in bits from the 256x256 joint histogram of 8-bit quantised pixels.
double mutual_information(const GrayImage& x, const GrayImage& y);

/// Fusion MI: I(F;A) + I(F;B).
double mutual_information(const GrayImage& a, const GrayImage& b, const GrayImage& f);

struct QabfParams {
    double gammaG = 0.9994;
    double kappaG = -15.0;
    double sigmaG = 0.5;
    double gammaA = 0.9879;
    double kappaA = -22.0;
    double sigmaA = 0.8;
};

/// Edge-preservation fusion metric in [0, 1]. Sobel gradients with
/// replicate borders; strength/orientation preservation pass through the
/// sigmoids of `p`, normalised so that identical gradients score exactly 1;
/// per-pixel scores are averaged with source edge strength as weight.
/// Returns 0 when neither source has any gradient.
double petrovic_qabf(const GrayImage& a, const GrayImage& b, const GrayImage& f,
                     const QabfParams& p = {});

struct MetricsReport {
    std::string id;
    std::optional<double> ssim;
    std::optional<double> mi;
    std::optional<double> qabf;
};

/// Shortest round-trip decimal form, always containing a '.' or exponent
/// (1 -> "1.0").
std::string format_real(double v);

/// CSV table `image,ssim,mi,qabf`; absent metrics are empty cells.
std::string format_metrics_csv(const std::vector<MetricsReport>& rows);

}  // namespace dctfuse
