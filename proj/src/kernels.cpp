#include "solidangle/kernels.hpp"

#include <stdexcept>
#include <string>

#include "kernels_common.hpp"

namespace solidangle::kernels {

namespace {

std::size_t scalar_signtest_count(const double* a, int rows, int cols, const double* x,
                                  std::size_t n_trials, double threshold) {
    std::size_t hits = 0;
    for (std::size_t t = 0; t < n_trials; ++t)
        hits += detail::signtest_one(a, rows, cols, x, n_trials, t, threshold) ? 1 : 0;
    return hits;
}

void scalar_sign_patterns(const double* a, int rows, int cols, const double* x,
                          std::size_t n_trials, std::uint32_t* out) {
    for (std::size_t t = 0; t < n_trials; ++t)
        out[t] = detail::pattern_one(a, rows, cols, x, n_trials, t);
}

constexpr Kernels kScalar{"scalar", scalar_signtest_count, scalar_sign_patterns};

} // namespace

#if defined(__x86_64__) || defined(_M_X64)
namespace detail {
const Kernels& avx2_kernels(); // kernels_avx2.cpp
}
#endif
#if defined(__aarch64__)
namespace detail {
const Kernels& neon_kernels(); // kernels_neon.cpp
}
#endif

const Kernels& scalar_kernels() { return kScalar; }

const std::vector<const Kernels*>& available_kernels() {
    static const std::vector<const Kernels*> list = [] {
        std::vector<const Kernels*> v{&kScalar};
#if defined(__x86_64__) || defined(_M_X64)
        if (__builtin_cpu_supports("avx2")) v.push_back(&detail::avx2_kernels());
#endif
#if defined(__aarch64__)
        v.push_back(&detail::neon_kernels());
#endif
        return v;
    }();
    return list;
}

namespace {
const Kernels* g_active = nullptr;
}

const Kernels& active_kernels() {
    if (!g_active) g_active = available_kernels().back();
    return *g_active;
}

void set_active_kernels(const char* name) {
    for (const Kernels* k : available_kernels()) {
        if (std::string(k->name) == name) {
            g_active = k;
            return;
        }
    }
    throw std::invalid_argument("unknown or unavailable kernel variant: " + std::string(name));
}

} // namespace solidangle::kernels
