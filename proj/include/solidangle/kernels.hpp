#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace solidangle::kernels {

// The estimator hot loop is a batched small-matrix times vector sign test:
// for each trial t with coordinate vector x_t, compute y = A * x_t and ask
// whether every component clears a threshold (hit counting), or record the
// full sign pattern of y (region census).
//
// Batch layout is coordinate-major: X[c * n_trials + t] holds coordinate c of
// trial t, so a SIMD variant loads consecutive trials into lanes while running
// the exact per-trial arithmetic of the scalar kernel (multiply then add, no
// FMA contraction). All variants are bitwise identical per trial; runtime
// dispatch therefore never changes a reported number.

using SigntestFn = std::size_t (*)(const double* a, int rows, int cols,
                                   const double* x, std::size_t n_trials,
                                   double threshold);
using PatternsFn = void (*)(const double* a, int rows, int cols,
                            const double* x, std::size_t n_trials,
                            std::uint32_t* out);

struct Kernels {
    const char* name;
    SigntestFn signtest_count; // # trials with (A x_t)_r >= threshold for all r
    PatternsFn sign_patterns;  // per trial, bit r set iff (A x_t)_r >= 0
};

/// Portable reference implementation.
const Kernels& scalar_kernels();

/// All variants usable on this CPU, scalar first.
const std::vector<const Kernels*>& available_kernels();

/// The dispatched variant (most specific available unless overridden).
const Kernels& active_kernels();

/// Override dispatch by name ("scalar", "avx2", "neon"). Throws
/// std::invalid_argument when the variant is unknown or unavailable here.
void set_active_kernels(const char* name);

} // namespace solidangle::kernels
