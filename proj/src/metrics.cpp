#include "dctfuse/metrics.hpp"

#include "dctfuse/error.hpp"
#include "dctfuse/simd/kernels.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace dctfuse {
namespace {

std::vector<double> gaussian_weights(int size, double sigma) {
    std::vector<double> w(static_cast<std::size_t>(size));
    const int half = size / 2;
    double sum = 0.0;
    for (int i = 0; i < size; ++i) {
        const double d = i - half;
        w[std::size_t(i)] = std::exp(-d * d / (2.0 * sigma * sigma));
        sum += w[std::size_t(i)];
    }
    for (double& v : w) v /= sum;
    return w;
}

// Separable 'valid' filtering: output is (W - n + 1) x (H - n + 1).
std::vector<double> filter_valid(std::span<const double> src, int width, int height,
                                 const std::vector<double>& w) {
    const auto& k = simd::active();
    const int n = int(w.size());
    const int ow = width - n + 1;
    const int oh = height - n + 1;
    std::vector<double> horiz(std::size_t(ow) * std::size_t(height), 0.0);
    for (int r = 0; r < height; ++r) {
        double* dst = horiz.data() + std::size_t(r) * std::size_t(ow);
        const double* row = src.data() + std::size_t(r) * std::size_t(width);
        for (int t = 0; t < n; ++t) k.axpy(dst, row + t, w[std::size_t(t)], std::size_t(ow));
    }
    std::vector<double> out(std::size_t(ow) * std::size_t(oh), 0.0);
    for (int r = 0; r < oh; ++r) {
        double* dst = out.data() + std::size_t(r) * std::size_t(ow);
        for (int t = 0; t < n; ++t)
            k.axpy(dst, horiz.data() + std::size_t(r + t) * std::size_t(ow), w[std::size_t(t)],
                   std::size_t(ow));
    }
    return out;
}

std::vector<unsigned char> bytes_of(const GrayImage& img) {
    std::vector<unsigned char> out(img.size());
    auto px = img.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) out[i] = quantize_u8(px[i]);
    return out;
}

struct Gradient {
    std::vector<double> strength;
    std::vector<double> orientation;  // undirected, in (-pi/2, pi/2]
};

Gradient sobel(const GrayImage& img) {
    Gradient g;
    g.strength.resize(img.size());
    g.orientation.resize(img.size());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            auto p = [&](int dr, int dc) { return img.clamped(r + dr, c + dc); };
            const double gx = (p(-1, 1) + 2.0 * p(0, 1) + p(1, 1)) -
                              (p(-1, -1) + 2.0 * p(0, -1) + p(1, -1));
            const double gy = (p(1, -1) + 2.0 * p(1, 0) + p(1, 1)) -
                              (p(-1, -1) + 2.0 * p(-1, 0) + p(-1, 1));
            const std::size_t i = std::size_t(r) * std::size_t(img.width()) + std::size_t(c);
            g.strength[i] = std::hypot(gx, gy);
            double theta = std::atan2(gy, gx);
            if (theta > std::numbers::pi / 2) theta -= std::numbers::pi;
            else if (theta <= -std::numbers::pi / 2) theta += std::numbers::pi;
            g.orientation[i] = theta;
        }
    }
    return g;
}

double sigmoid(double x, double gamma, double kappa, double sigma) {
    return gamma / (1.0 + std::exp(kappa * (x - sigma)));
}

// Per-pixel preservation of source edges in the fused image.
double preservation(double gs, double ts, double gf, double tf, const QabfParams& p) {
    double strength;
    if (gs == gf) strength = 1.0;
    else strength = gs > gf ? gf / gs : gs / gf;
    double d = std::abs(ts - tf);
    if (d > std::numbers::pi / 2) d = std::numbers::pi - d;
    const double orient = 1.0 - d / (std::numbers::pi / 2);
    const double qg = sigmoid(strength, p.gammaG, p.kappaG, p.sigmaG) /
                      sigmoid(1.0, p.gammaG, p.kappaG, p.sigmaG);
    const double qa = sigmoid(orient, p.gammaA, p.kappaA, p.sigmaA) /
                      sigmoid(1.0, p.gammaA, p.kappaA, p.sigmaA);
    return qg * qa;
}

}  // namespace

double ssim(const GrayImage& ref, const GrayImage& test, const SsimParams& p) {
    require_same_shape(ref, test, "ssim");
    if (ref.width() < p.window || ref.height() < p.window)
        throw Error(ErrorCode::InvalidArgument,
                    "ssim: image smaller than the " + std::to_string(p.window) + "x" +
                        std::to_string(p.window) + " window");
    const auto& k = simd::active();
    const std::vector<double> w = gaussian_weights(p.window, p.sigma);
    const int width = ref.width();
    const int height = ref.height();
    const std::size_t n = ref.size();
    auto x = ref.pixels();
    auto y = test.pixels();

    std::vector<double> xx(n), yy(n), xy(n);
    k.mul(xx.data(), x.data(), x.data(), n);
    k.mul(yy.data(), y.data(), y.data(), n);
    k.mul(xy.data(), x.data(), y.data(), n);

    const auto mx = filter_valid(x, width, height, w);
    const auto my = filter_valid(y, width, height, w);
    const auto exx = filter_valid(xx, width, height, w);
    const auto eyy = filter_valid(yy, width, height, w);
    const auto exy = filter_valid(xy, width, height, w);

    const double c1 = (p.k1 * p.dynamicRange) * (p.k1 * p.dynamicRange);
    const double c2 = (p.k2 * p.dynamicRange) * (p.k2 * p.dynamicRange);
    double sum = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
        const double sxx = exx[i] - mx[i] * mx[i];
        const double syy = eyy[i] - my[i] * my[i];
        const double sxy = exy[i] - mx[i] * my[i];
        const double num = (2.0 * mx[i] * my[i] + c1) * (2.0 * sxy + c2);
        const double den = (mx[i] * mx[i] + my[i] * my[i] + c1) * (sxx + syy + c2);
        sum += num / den;
    }
    return sum / double(mx.size());
}

double entropy(const GrayImage& img) {
    std::array<std::size_t, 256> hist{};
    for (unsigned char v : bytes_of(img)) ++hist[v];
    const double total = double(img.size());
    double h = 0.0;
    for (std::size_t c : hist) {
        if (!c) continue;
        const double pr = double(c) / total;
        h -= pr * std::log2(pr);
    }
    return h;
}

double mutual_information(const GrayImage& x, const GrayImage& y) {
    require_same_shape(x, y, "mutual_information");
    const auto bx = bytes_of(x);
    const auto by = bytes_of(y);
    std::vector<std::size_t> joint(256 * 256, 0);
    std::array<std::size_t, 256> hx{}, hy{};
    for (std::size_t i = 0; i < bx.size(); ++i) {
        ++joint[std::size_t(bx[i]) * 256 + by[i]];
        ++hx[bx[i]];
        ++hy[by[i]];
    }
    const double total = double(bx.size());
    double mi = 0.0;
    for (std::size_t a = 0; a < 256; ++a) {
        if (!hx[a]) continue;
        for (std::size_t b = 0; b < 256; ++b) {
            const std::size_t c = joint[a * 256 + b];
            if (!c) continue;
            // p(a,b) / (p(a) p(b)) = c * total / (hx * hy)
            mi += double(c) / total * std::log2(double(c) * total / (double(hx[a]) * double(hy[b])));
        }
    }
    return mi > 0.0 ? mi : 0.0;
}

double mutual_information(const GrayImage& a, const GrayImage& b, const GrayImage& f) {
    require_same_shape(a, f, "mutual_information");
    require_same_shape(b, f, "mutual_information");
    return mutual_information(f, a) + mutual_information(f, b);
}

double petrovic_qabf(const GrayImage& a, const GrayImage& b, const GrayImage& f,
                     const QabfParams& p) {
    require_same_shape(a, f, "petrovic_qabf");
    require_same_shape(b, f, "petrovic_qabf");
    const Gradient ga = sobel(a);
    const Gradient gb = sobel(b);
    const Gradient gf = sobel(f);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double wa = ga.strength[i];
        const double wb = gb.strength[i];
        if (wa > 0.0)
            num += wa * preservation(wa, ga.orientation[i], gf.strength[i], gf.orientation[i], p);
        if (wb > 0.0)
            num += wb * preservation(wb, gb.orientation[i], gf.strength[i], gf.orientation[i], p);
        den += wa + wb;
    }
    if (!(den > 0.0)) return 0.0;
    const double q = num / den;
    return q > 1.0 ? 1.0 : q;
}

std::string format_real(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, end);
    if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

std::string format_metrics_csv(const std::vector<MetricsReport>& rows) {
    std::string out = "image,ssim,mi,qabf\n";
    auto cell = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
    for (const auto& r : rows)
        out += r.id + "," + cell(r.ssim) + "," + cell(r.mi) + "," + cell(r.qabf) + "\n";
    return out;
}

}  // namespace dctfuse
