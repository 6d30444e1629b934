#pragma once

#include <stdexcept>

namespace solidangle {

/// A symmetric matrix failed the positive-definiteness test (Cholesky pivot
/// below 1e-12 times the largest diagonal entry).
struct NotPositiveDefinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A square linear system whose pivot fell below 1e-12 times the matrix scale.
struct Singular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Cone generators are linearly dependent (their Gram matrix is not positive
/// definite), or a simplex has no interior.
struct DegenerateCone : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A cone/subspace intersection test could not be decided: the projected
/// generators are numerically degenerate for the hull test.
struct DegenerateProjection : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The facet hyperplanes of a simplex produced more sign regions than the
/// general-position count allows; the normal set is numerically degenerate.
struct GeneralPositionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A Monte Carlo run exceeded its resampling budget (more than n/1000
/// degenerate trials).
struct NumericalInstability : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace solidangle
