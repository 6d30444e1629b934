// NEON kernel variant (aarch64): two trials per register, mirroring the
// scalar reference arithmetic exactly (mul then add, rows in order).

#if defined(__aarch64__)

#include <arm_neon.h>

#include "solidangle/kernels.hpp"
#include "kernels_common.hpp"

namespace solidangle::kernels::detail {

namespace {

std::size_t neon_signtest_count(const double* a, int rows, int cols, const double* x,
                                std::size_t n_trials, double threshold) {
    std::size_t hits = 0;
    std::size_t t = 0;
    const float64x2_t thr = vdupq_n_f64(threshold);
    for (; t + 2 <= n_trials; t += 2) {
        uint64x2_t ok = vdupq_n_u64(~0ULL);
        for (int r = 0; r < rows; ++r) {
            const double* arow = a + std::size_t(r) * cols;
            float64x2_t acc = vdupq_n_f64(0.0);
            for (int c = 0; c < cols; ++c) {
                const float64x2_t xc = vld1q_f64(x + std::size_t(c) * n_trials + t);
                acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(arow[c]), xc));
            }
            ok = vandq_u64(ok, vcgeq_f64(acc, thr));
        }
        hits += (vgetq_lane_u64(ok, 0) ? 1 : 0) + (vgetq_lane_u64(ok, 1) ? 1 : 0);
    }
    for (; t < n_trials; ++t)
        hits += signtest_one(a, rows, cols, x, n_trials, t, threshold) ? 1 : 0;
    return hits;
}

void neon_sign_patterns(const double* a, int rows, int cols, const double* x,
                        std::size_t n_trials, std::uint32_t* out) {
    std::size_t t = 0;
    const float64x2_t zero = vdupq_n_f64(0.0);
    for (; t + 2 <= n_trials; t += 2) {
        std::uint32_t pat0 = 0, pat1 = 0;
        for (int r = 0; r < rows; ++r) {
            const double* arow = a + std::size_t(r) * cols;
            float64x2_t acc = vdupq_n_f64(0.0);
            for (int c = 0; c < cols; ++c) {
                const float64x2_t xc = vld1q_f64(x + std::size_t(c) * n_trials + t);
                acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(arow[c]), xc));
            }
            const uint64x2_t ge = vcgeq_f64(acc, zero);
            if (vgetq_lane_u64(ge, 0)) pat0 |= (std::uint32_t(1) << r);
            if (vgetq_lane_u64(ge, 1)) pat1 |= (std::uint32_t(1) << r);
        }
        out[t] = pat0;
        out[t + 1] = pat1;
    }
    for (; t < n_trials; ++t) out[t] = pattern_one(a, rows, cols, x, n_trials, t);
}

constexpr Kernels kNeon{"neon", neon_signtest_count, neon_sign_patterns};

} // namespace

const Kernels& neon_kernels() { return kNeon; }

} // namespace solidangle::kernels::detail

#endif // aarch64
