#pragma once

#include <cstdint>
#include <string>

#include "solidangle/cone.hpp"
#include "solidangle/linalg.hpp"
#include "solidangle/rng.hpp"

namespace solidangle {

enum class Method { membership, orthant, hull, crofton, exact };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

/// Universal estimator output: a point estimate of a normalized solid angle
/// with its binomial standard error (scaled through the estimator's affine
/// transform where one applies).
struct AngleEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    Method method = Method::membership;
    std::uint64_t seed = 0;
};

/// Two-estimate consistency check at the fixed 4-sigma policy threshold.
struct ComparisonVerdict {
    std::string label_a;
    std::string label_b;
    double diff = 0.0;
    double combined_se = 0.0;
    double z = 0.0;
    bool pass = false;
};

/// Fraction of n standard Gaussian points lying in the cone (which must be
/// full-dimensional), tested against the dual description.
AngleEstimate estimate_membership(const SimplicialCone& c, std::size_t n, RandomStream& stream);

/// Orthant estimator: fraction of draws from N(0, inverse(g)) with all
/// coordinates nonnegative. The input is normalized to its correlation matrix
/// first, so the result depends on g only through correlation(g) -- same
/// stream, same hit sequence, bit for bit.
AngleEstimate estimate_orthant(const GramMatrix& g, std::size_t n, RandomStream& stream);

/// Expected vertex angle of the Gaussian simplex in dimension d: half the
/// probability that the origin lies in the convex hull of the differences of
/// d+1 standard Gaussian points in dimension d-1.
AngleEstimate estimate_hull(int d, std::size_t n, RandomStream& stream);

/// Half the probability that a uniform random subspace of complementary
/// dimension plus one meets the cone nontrivially. Works for cones of any
/// dimension k <= ambient; the subspace is realized as the span of Gaussian
/// vectors (rotation invariance). Degenerate trials are resampled; more than
/// n/1000 resamples raises NumericalInstability.
AngleEstimate estimate_crofton(const SimplicialCone& c, std::size_t n, RandomStream& stream);

ComparisonVerdict compare(const AngleEstimate& a, const AngleEstimate& b,
                          std::string label_a = "a", std::string label_b = "b");

double binomial_std_error(double p_hat, std::size_t n);

} // namespace solidangle
