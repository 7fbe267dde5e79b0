// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "backends.hpp"

#include <immintrin.h>

#include <cmath>

namespace dctfuse::simd {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_max_sd(lo, sh));
}

inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

void matmul8(const double* a, const double* b, double* out) {
    __m256d blo[8], bhi[8];
    for (int k = 0; k < 8; ++k) {
        blo[k] = _mm256_loadu_pd(b + k * 8);
        bhi[k] = _mm256_loadu_pd(b + k * 8 + 4);
    }
    for (int i = 0; i < 8; ++i) {
        const double* ar = a + i * 8;
        __m256d s = _mm256_broadcast_sd(ar);
        __m256d lo = _mm256_mul_pd(s, blo[0]);
        __m256d hi = _mm256_mul_pd(s, bhi[0]);
        for (int k = 1; k < 8; ++k) {
            s = _mm256_broadcast_sd(ar + k);
            lo = _mm256_fmadd_pd(s, blo[k], lo);
            hi = _mm256_fmadd_pd(s, bhi[k], hi);
        }
        _mm256_storeu_pd(out + i * 8, lo);
        _mm256_storeu_pd(out + i * 8 + 4, hi);
    }
}

double sum_abs2(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_add_pd(acc0, abs_pd(_mm256_loadu_pd(x + i)));
        acc1 = _mm256_add_pd(acc1, abs_pd(_mm256_loadu_pd(y + i)));
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += std::abs(x[i]) + std::abs(y[i]);
    return acc;
}

double sum_squares(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d v0 = _mm256_loadu_pd(x + i);
        __m256d v1 = _mm256_loadu_pd(x + i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        acc0 = _mm256_fmadd_pd(v, v, acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

double max_abs(const double* x, std::size_t n) {
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(x + i)));
    double r = hmax(m);
    for (; i < n; ++i) {
        double v = std::abs(x[i]);
        if (v > r) r = v;
    }
    return r;
}

void axpy(double* dst, const double* src, double k, std::size_t n) {
    const __m256d kv = _mm256_set1_pd(k);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d d0 = _mm256_loadu_pd(dst + i);
        __m256d d1 = _mm256_loadu_pd(dst + i + 4);
        d0 = _mm256_fmadd_pd(kv, _mm256_loadu_pd(src + i), d0);
        d1 = _mm256_fmadd_pd(kv, _mm256_loadu_pd(src + i + 4), d1);
        _mm256_storeu_pd(dst + i, d0);
        _mm256_storeu_pd(dst + i + 4, d1);
    }
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_loadu_pd(dst + i);
        _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(kv, _mm256_loadu_pd(src + i), d));
    }
    for (; i < n; ++i) dst[i] += k * src[i];
}

void mul(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

constexpr KernelTable kTable{
    Backend::Avx2, matmul8, sum_abs2, sum_squares, max_abs, axpy, mul,
};

}  // namespace

const KernelTable& avx2_kernels() noexcept { return kTable; }

}  // namespace dctfuse::simd
