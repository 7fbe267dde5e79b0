#pragma once

#include "dctfuse/simd/kernels.hpp"

namespace dctfuse::simd {

#if defined(DCTFUSE_HAVE_AVX2)
const KernelTable& avx2_kernels() noexcept;
#endif

#if defined(DCTFUSE_HAVE_NEON)
const KernelTable& neon_kernels() noexcept;
#endif

}  // namespace dctfuse::simd
