#include <cstdlib>
#include <cstring>

#include "risop/simd/kernels.hpp"

namespace risop::simd {

#ifdef RISOP_HAVE_AVX2
namespace avx2 {
const Kernels& kernels();
}
#endif

const Kernels* avx2_kernels() {
#ifdef RISOP_HAVE_AVX2
    if (__builtin_cpu_supports("avx2")) return &avx2::kernels();
#endif
    return nullptr;
}

const Kernels& active_kernels() {
    static const Kernels& chosen = [] () -> const Kernels& {
        const char* env = std::getenv("RIS_OUTAGE_SIMD");
        if (env && std::strcmp(env, "scalar") == 0) return scalar_kernels();
        const Kernels* k = avx2_kernels();
        return k ? *k : scalar_kernels();
    }();
    return chosen;
}

}  // namespace risop::simd
