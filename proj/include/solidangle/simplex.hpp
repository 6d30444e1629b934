#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solidangle/estimate.hpp"
#include "solidangle/linalg.hpp"
#include "solidangle/rng.hpp"

namespace solidangle {

/// d+1 affinely independent points in dimension m >= d. Construction rejects
/// degenerate vertex sets (difference Gram not positive definite).
class Simplex {
public:
    static Simplex from_vertices(std::vector<Vector> vertices);

    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return int(vertices_.size()) - 1; }
    bool full_dimensional() const { return dim() == ambient_dim_; }
    const std::vector<Vector>& vertices() const { return vertices_; }

private:
    Simplex(std::vector<Vector> vertices, int ambient);
    int ambient_dim_;
    std::vector<Vector> vertices_;
};

/// Cone of the d difference vectors x_j - x_i at vertex i.
SimplicialCone vertex_cone(const Simplex& s, int i);

/// Sum of the d+1 vertex solid angles, each estimated through the vertex-cone
/// Gram with the orthant estimator (valid in any ambient dimension: the angle
/// depends on the Gram matrix only). Standard errors combine in quadrature.
AngleEstimate angle_sum(const Simplex& s, std::size_t n, RandomStream& stream);

/// Vertex-cone Gram of the regular simplex: diagonal 2, off-diagonal 1.
GramMatrix regular_gram(int d);

/// d+1 independent standard Gaussian points in dimension d.
Simplex gaussian_simplex(int d, RandomStream& stream);

/// Gram matrix of the differences X_k - X_0 of d+1 Gaussian points lifted to
/// dimension n, accumulated streamingly: O(n d^2) time, O(d^2) memory. As n
/// grows the correlations freeze at 1/2 (the regular simplex).
GramMatrix lifted_difference_gram(int d, std::size_t n, RandomStream& stream);

/// Flattening family: conv(0, e_1, ..., e_{d-1}, (1-t) e_d + t (e_1+...+e_{d-1})).
/// Angle sum tends to 0 as t -> 1.
Simplex family_s1(int d, double t);

/// Spreading family: conv(0, e_1 - t c, ..., e_d - t c) with c the centroid of
/// the basis vectors. Angle sum tends to 1/2 as t -> 1.
Simplex family_s2(int d, double t);

/// For each vertex k of a full-dimensional simplex, the unit normal (through
/// the origin) of the hyperplane parallel to the opposite facet, oriented so
/// the simplex side is positive.
std::vector<Vector> facet_normals(const Simplex& s);

/// Isometry-free chart of the regular simplex into dimension d (center, then
/// drop the last coordinate); used where a full-dimensional vertex set is
/// needed. Angles are not preserved, facet combinatorics are.
Simplex regular_embedded(int d);

/// One cell of the central hyperplane arrangement cut out by the facet
/// normals. Pattern bit k is set iff <n_k, u> >= 0 on the cell.
struct Region {
    std::uint32_t pattern = 0;
    std::uint64_t hits = 0;
    AngleEstimate angle;  // hit frequency over the census sample
    Vector witness;       // certified interior direction
};

/// Sign-vector inventory of the arrangement induced by a simplex's facets.
/// In general position there are exactly 2^(d+1) - 2 cells; frequencies are
/// dyadic rationals over a power-of-two sample count, so they sum to exactly 1.
struct RegionCensus {
    int dim = 0;                 // simplex dimension; patterns have dim+1 bits
    std::uint64_t n_samples = 0; // frequency-phase sample count (power of two)
    std::vector<Region> regions; // sorted by pattern

    static std::uint32_t expected_count(int d) { return (std::uint32_t(1) << (d + 1)) - 2; }

    double frequency_sum() const;
    double single_minus_mass() const; // internal vertex cones
    double single_plus_mass() const;  // their negations
};

std::string pattern_string(std::uint32_t pattern, int bits);
bool is_single_minus(std::uint32_t pattern, int bits);
bool is_single_plus(std::uint32_t pattern, int bits);

/// Enumerates the arrangement cells: a sampling phase records realized sign
/// patterns, a deterministic completion pass constructs a witness direction
/// for every remaining feasible pattern (one linear solve per pattern), and a
/// counting phase over a power-of-two number of directions yields exact-sum
/// frequencies. Throws GeneralPositionViolation when the normals are
/// numerically degenerate (pattern outside the feasible set, or count above
/// the general-position bound).
RegionCensus region_census(const Simplex& s, std::size_t n_per_region, RandomStream& stream);

} // namespace solidangle
