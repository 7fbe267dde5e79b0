// AArch64 Advanced SIMD variant. NEON is mandatory on AArch64, so no
// runtime probe is needed beyond compiling this file.

#include "backends.hpp"

#include <arm_neon.h>

#include <cmath>

namespace dctfuse::simd {
namespace {

void matmul8(const double* a, const double* b, double* out) {
    for (int i = 0; i < 8; ++i) {
        const double* ar = a + i * 8;
        float64x2_t acc[4];
        for (int q = 0; q < 4; ++q) acc[q] = vmulq_n_f64(vld1q_f64(b + 2 * q), ar[0]);
        for (int k = 1; k < 8; ++k) {
            const float64x2_t s = vdupq_n_f64(ar[k]);
            for (int q = 0; q < 4; ++q) acc[q] = vfmaq_f64(acc[q], s, vld1q_f64(b + k * 8 + 2 * q));
        }
        for (int q = 0; q < 4; ++q) vst1q_f64(out + i * 8 + 2 * q, acc[q]);
    }
}

double sum_abs2(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vaddq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
        acc = vaddq_f64(acc, vabsq_f64(vld1q_f64(y + i)));
    }
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += std::abs(x[i]) + std::abs(y[i]);
    return r;
}

double sum_squares(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(x + i);
        acc = vfmaq_f64(acc, v, v);
    }
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += x[i] * x[i];
    return r;
}

double max_abs(const double* x, std::size_t n) {
    float64x2_t m = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x + i)));
    double r = vmaxvq_f64(m);
    for (; i < n; ++i) {
        double v = std::abs(x[i]);
        if (v > r) r = v;
    }
    return r;
}

void axpy(double* dst, const double* src, double k, std::size_t n) {
    const float64x2_t kv = vdupq_n_f64(k);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vfmaq_f64(vld1q_f64(dst + i), kv, vld1q_f64(src + i)));
    for (; i < n; ++i) dst[i] += k * src[i];
}

void mul(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

constexpr KernelTable kTable{
    Backend::Neon, matmul8, sum_abs2, sum_squares, max_abs, axpy, mul,
};

}  // namespace

const KernelTable& neon_kernels() noexcept { return kTable; }

}  // namespace dctfuse::simd
