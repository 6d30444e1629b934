#pragma once

#include <span>
#include <vector>

#include "solidangle/linalg.hpp"

namespace solidangle {

/// Positive hull of linearly independent generators. Construction validates
/// independence (the cached Gram matrix must be positive definite).
/// Immutable after construction; safe to share across threads.
class SimplicialCone {
public:
    /// Throws DegenerateCone when the generators are dependent,
    /// std::invalid_argument on empty input or mixed dimensions.
    static SimplicialCone from_generators(std::vector<Vector> generators);

    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return int(generators_.size()); }
    bool full_dimensional() const { return dim() == ambient_dim_; }
    const std::vector<Vector>& generators() const { return generators_; }
    const GramMatrix& gram() const { return gram_; }

private:
    SimplicialCone(std::vector<Vector> gens, GramMatrix g, int ambient);

    int ambient_dim_;
    std::vector<Vector> generators_;
    GramMatrix gram_;
};

/// Dual description of a full-dimensional cone: normals n_k with
/// <n_k, v_i> = delta_ki, so C = { x : <n_k, x> >= 0 for all k }. The Gram
/// matrix of the normals is the inverse of the generator Gram.
struct DualFrame {
    std::vector<Vector> normals;
    GramMatrix normal_gram;
};

DualFrame dual_normals(const SimplicialCone& c);

/// Membership with a +-1e-10 coefficient band: true iff x = sum lambda_i v_i
/// with all lambda_i >= -1e-10 (and, for cones not of full ambient dimension,
/// residual below 1e-9 relative).
bool contains(const SimplicialCone& c, const Vector& x);

/// Membership via the dual description: all <n_k, x> >= -1e-10. Agrees with
/// contains() away from the tolerance band.
bool contains_dual(const DualFrame& frame, const Vector& x);

/// Closed-form planar cone angle: arccos(rho)/(2*pi) on the unit-normalized
/// Gram. Output in (0, 1/2).
double angle_exact_2d(const GramMatrix& g);

/// Closed-form 3d normalized solid angle via the spherical-excess arctangent
/// identity on the unit-normalized Gram. Output in (0, 1/2).
double angle_exact_3d(const GramMatrix& g);

/// True iff the cone meets the subspace spanned by w_basis in more than {0}.
/// Reduction: project generators onto the orthogonal complement of W and test
/// whether their convex hull contains the origin. A generator lying in W
/// (projection below 1e-12 relative) certifies a nontrivial intersection
/// directly. Throws DegenerateProjection when the hull test is numerically
/// undecidable.
bool subspace_intersects(const SimplicialCone& c, std::span<const Vector> w_basis);

namespace detail {
/// Rows of an orthonormal basis of span(rows). Throws std::invalid_argument
/// when the rows are dependent (relative tolerance 1e-12).
std::vector<Vector> orthonormalize(std::span<const Vector> rows);

/// Barycentric hull test: true iff 0 lies in conv(points) for k points that
/// affinely span their ambient space (k = dim + 1). Throws Singular when the
/// system is degenerate.
bool origin_in_simplex_hull(const std::vector<Vector>& points);
} // namespace detail

} // namespace solidangle
