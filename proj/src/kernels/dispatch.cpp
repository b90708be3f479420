#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace ivfopt::kernels {

const Table* avx2() {
#if defined(IVFOPT_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const Table& active() {
    static const Table& chosen = [&]() -> const Table& {
        const char* env = std::getenv("IVFOPT_SIMD");
        if (env != nullptr && std::string_view(env) == "scalar") return scalar();
        if (const Table* t = avx2()) return *t;
        return scalar();
    }();
    return chosen;
}

}  // namespace ivfopt::kernels
