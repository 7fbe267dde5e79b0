#pragma once

// Data-parallel inner loops used by the transform, focus-measure, blur and
// SSIM code. Every kernel has a scalar reference implementation; vector
// variants (AVX2+FMA on x86-64, NEON on AArch64) are selected once at
// runtime and must agree with the reference to rounding error.

#include <cstddef>
#include <string_view>

namespace dctfuse::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend b) noexcept;

struct KernelTable {
    Backend backend;

    /// out = a * b for row-major 8x8 matrices. `out` must not alias inputs.
    void (*matmul8)(const double* a, const double* b, double* out);

    /// Sum of |x[i]| + |y[i]| over n elements.
    double (*sum_abs2)(const double* x, const double* y, std::size_t n);

    /// Sum of x[i]^2.
    double (*sum_squares)(const double* x, std::size_t n);

    /// Max |x[i]|, 0 for n == 0.
    double (*max_abs)(const double* x, std::size_t n);

    /// dst[i] += k * src[i].
    void (*axpy)(double* dst, const double* src, double k, std::size_t n);

    /// dst[i] = a[i] * b[i].
    void (*mul)(double* dst, const double* a, const double* b, std::size_t n);
};

/// Scalar reference table; always available.
const KernelTable& scalar_kernels() noexcept;

/// Table for `b`, or nullptr when the backend is not compiled in or the CPU
/// lacks the required instructions.
const KernelTable* kernels_for(Backend b) noexcept;

/// Best backend supported by this CPU.
Backend detect_backend() noexcept;

/// Currently active table (detect_backend() unless overridden).
const KernelTable& active() noexcept;

/// Overrides the active backend; returns false (and changes nothing) when
/// `b` is unavailable. Not thread-safe with concurrent kernel use.
bool set_backend(Backend b) noexcept;

}  // namespace dctfuse::simd
