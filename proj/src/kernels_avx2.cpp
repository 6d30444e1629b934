// AVX2 kernel variant: four trials per register, same per-trial arithmetic as
// the scalar reference (mul then add, rows in order), so each lane reproduces
// the scalar result bit for bit. Tails run the shared scalar routine.
//
// This translation unit is compiled with -mavx2 (and -ffp-contract=off); it is
// only ever called after a runtime cpuid check.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "solidangle/kernels.hpp"
#include "kernels_common.hpp"

namespace solidangle::kernels::detail {

namespace {

std::size_t avx2_signtest_count(const double* a, int rows, int cols, const double* x,
                                std::size_t n_trials, double threshold) {
    std::size_t hits = 0;
    std::size_t t = 0;
    const __m256d thr = _mm256_set1_pd(threshold);
    const __m256d all = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (; t + 4 <= n_trials; t += 4) {
        __m256d ok = all;
        for (int r = 0; r < rows; ++r) {
            const double* arow = a + std::size_t(r) * cols;
            __m256d acc = _mm256_setzero_pd();
            for (int c = 0; c < cols; ++c) {
                const __m256d xc = _mm256_loadu_pd(x + std::size_t(c) * n_trials + t);
                acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(arow[c]), xc));
            }
            ok = _mm256_and_pd(ok, _mm256_cmp_pd(acc, thr, _CMP_GE_OQ));
        }
        hits += std::size_t(__builtin_popcount(unsigned(_mm256_movemask_pd(ok))));
    }
    for (; t < n_trials; ++t)
        hits += signtest_one(a, rows, cols, x, n_trials, t, threshold) ? 1 : 0;
    return hits;
}

void avx2_sign_patterns(const double* a, int rows, int cols, const double* x,
                        std::size_t n_trials, std::uint32_t* out) {
    std::size_t t = 0;
    const __m256d zero = _mm256_setzero_pd();
    for (; t + 4 <= n_trials; t += 4) {
        std::uint32_t pat[4] = {0, 0, 0, 0};
        for (int r = 0; r < rows; ++r) {
            const double* arow = a + std::size_t(r) * cols;
            __m256d acc = _mm256_setzero_pd();
            for (int c = 0; c < cols; ++c) {
                const __m256d xc = _mm256_loadu_pd(x + std::size_t(c) * n_trials + t);
                acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(arow[c]), xc));
            }
            const unsigned mask = unsigned(_mm256_movemask_pd(_mm256_cmp_pd(acc, zero, _CMP_GE_OQ)));
            for (int lane = 0; lane < 4; ++lane)
                pat[lane] |= ((mask >> lane) & 1u) << r;
        }
        for (int lane = 0; lane < 4; ++lane) out[t + lane] = pat[lane];
    }
    for (; t < n_trials; ++t) out[t] = pattern_one(a, rows, cols, x, n_trials, t);
}

constexpr Kernels kAvx2{"avx2", avx2_signtest_count, avx2_sign_patterns};

} // namespace

const Kernels& avx2_kernels() { return kAvx2; }

} // namespace solidangle::kernels::detail

#endif // x86_64
