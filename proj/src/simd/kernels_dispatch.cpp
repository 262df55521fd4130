#include "mdc/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace mdc::simd {

bool avx2_available() {
#if (defined(__x86_64__) || defined(__i386__)) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

struct Selected {
    const Kernels* k;
    const char* name;
};

Selected select() {
    const char* env = std::getenv("MDC_SIMD");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return {&scalar_kernels(), "scalar"};
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return {&avx2_kernels(), "avx2"};
    }
    if (avx2_available()) return {&avx2_kernels(), "avx2"};
    return {&scalar_kernels(), "scalar"};
}

const Selected& selected() {
    static const Selected s = select();
    return s;
}

} // namespace

const Kernels& active() { return *selected().k; }
const char* active_name() { return selected().name; }

} // namespace mdc::simd
