#include "dctfuse/simd/kernels.hpp"

#include "backends.hpp"

#include <cmath>

namespace dctfuse::simd {
namespace {

void matmul8(const double* a, const double* b, double* out) {
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 8; ++k) acc += a[i * 8 + k] * b[k * 8 + j];
            out[i * 8 + j] = acc;
        }
    }
}

double sum_abs2(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::abs(x[i]) + std::abs(y[i]);
    return acc;
}

double sum_squares(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = std::abs(x[i]);
        if (v > m) m = v;
    }
    return m;
}

void axpy(double* dst, const double* src, double k, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += k * src[i];
}

void mul(double* dst, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

constexpr KernelTable kTable{
    Backend::Scalar, matmul8, sum_abs2, sum_squares, max_abs, axpy, mul,
};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kTable; }

}  // namespace dctfuse::simd
