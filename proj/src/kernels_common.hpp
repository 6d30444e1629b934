#pragma once

#include <cstddef>
#include <cstdint>

// Shared per-trial reference arithmetic. Every kernel variant (and every SIMD
// tail) routes single trials through these, so the operation order is pinned:
// one rounding for the product, one for the accumulate, rows in order.
// Translation units including this header are compiled with -ffp-contract=off.

namespace solidangle::kernels::detail {

inline bool signtest_one(const double* a, int rows, int cols, const double* x,
                         std::size_t stride, std::size_t t, double threshold) {
    for (int r = 0; r < rows; ++r) {
        const double* arow = a + std::size_t(r) * cols;
        double acc = 0.0;
        for (int c = 0; c < cols; ++c) acc = acc + arow[c] * x[std::size_t(c) * stride + t];
        if (!(acc >= threshold)) return false;
    }
    return true;
}

inline std::uint32_t pattern_one(const double* a, int rows, int cols, const double* x,
                                 std::size_t stride, std::size_t t) {
    std::uint32_t pat = 0;
    for (int r = 0; r < rows; ++r) {
        const double* arow = a + std::size_t(r) * cols;
        double acc = 0.0;
        for (int c = 0; c < cols; ++c) acc = acc + arow[c] * x[std::size_t(c) * stride + t];
        if (acc >= 0.0) pat |= (std::uint32_t(1) << r);
    }
    return pat;
}

} // namespace solidangle::kernels::detail
