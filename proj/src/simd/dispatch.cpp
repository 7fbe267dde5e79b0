#include "dctfuse/simd/kernels.hpp"

#include "backends.hpp"

#include <atomic>

namespace dctfuse::simd {
namespace {

bool cpu_has_avx2_fma() noexcept {
#if defined(DCTFUSE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<const KernelTable*>& active_slot() noexcept {
    static std::atomic<const KernelTable*> slot{kernels_for(detect_backend())};
    return slot;
}

}  // namespace

std::string_view to_string(Backend b) noexcept {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "unknown";
}

const KernelTable* kernels_for(Backend b) noexcept {
    switch (b) {
        case Backend::Scalar: return &scalar_kernels();
        case Backend::Avx2:
#if defined(DCTFUSE_HAVE_AVX2)
            if (cpu_has_avx2_fma()) return &avx2_kernels();
#endif
            return nullptr;
        case Backend::Neon:
#if defined(DCTFUSE_HAVE_NEON)
            return &neon_kernels();
#else
            return nullptr;
#endif
    }
    return nullptr;
}

Backend detect_backend() noexcept {
    if (kernels_for(Backend::Avx2)) return Backend::Avx2;
    if (kernels_for(Backend::Neon)) return Backend::Neon;
    return Backend::Scalar;
}

const KernelTable& active() noexcept {
    return *active_slot().load(std::memory_order_acquire);
}

bool set_backend(Backend b) noexcept {
    const KernelTable* t = kernels_for(b);
    if (!t) return false;
    active_slot().store(t, std::memory_order_release);
    return true;
}

}  // namespace dctfuse::simd
