#include "solidangle/cone.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace solidangle {

namespace {
constexpr double kCoeffTol = 1e-10;    // membership coefficient band
constexpr double kResidualRel = 1e-9;  // span-membership residual
constexpr double kProjectionRel = 1e-12;

GramMatrix validated_gram(std::span<const Vector> gens) {
    GramMatrix g = gram(gens);
    try {
        cholesky(g);
    } catch (const NotPositiveDefinite&) {
        throw DegenerateCone("cone generators are linearly dependent");
    }
    return g;
}
} // namespace

SimplicialCone::SimplicialCone(std::vector<Vector> gens, GramMatrix g, int ambient)
    : ambient_dim_(ambient), generators_(std::move(gens)), gram_(std::move(g)) {}

SimplicialCone SimplicialCone::from_generators(std::vector<Vector> generators) {
    if (generators.empty()) throw std::invalid_argument("cone: empty generator list");
    const int m = int(generators.front().size());
    for (const auto& v : generators)
        if (int(v.size()) != m) throw std::invalid_argument("cone: generator dimension mismatch");
    if (int(generators.size()) > m)
        throw DegenerateCone("cone: more generators than ambient dimension");
    GramMatrix g = validated_gram(generators);
    return SimplicialCone(std::move(generators), std::move(g), m);
}

DualFrame dual_normals(const SimplicialCone& c) {
    if (!c.full_dimensional())
        throw std::invalid_argument("dual_normals: cone must be full-dimensional");
    const int d = c.dim();
    // Columns of V are the generators; row k of V^-1 is the normal n_k.
    Matrix v(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) v(i, j) = c.generators()[j][i];

    Matrix vt = transpose(v);
    std::vector<Vector> normals(d);
    Vector e(d, 0.0);
    for (int k = 0; k < d; ++k) {
        std::fill(e.begin(), e.end(), 0.0);
        e[k] = 1.0;
        normals[k] = solve(vt, e); // V^T n_k = e_k  <=>  <n_k, v_i> = delta_ki
    }
    GramMatrix ng = gram(normals);
    return DualFrame{std::move(normals), std::move(ng)};
}

bool contains(const SimplicialCone& c, const Vector& x) {
    if (int(x.size()) != c.ambient_dim())
        throw std::invalid_argument("contains: point dimension mismatch");
    const int d = c.dim();
    const int m = c.ambient_dim();

    Vector lambda;
    if (d == m) {
        Matrix v(d, d);
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < d; ++i) v(i, j) = c.generators()[j][i];
        try {
            lambda = solve(v, x);
        } catch (const Singular&) {
            throw DegenerateCone("contains: generator matrix is singular");
        }
    } else {
        // Least squares through the normal equations, then a residual check
        // for membership in the cone's span.
        Vector rhs(d);
        for (int i = 0; i < d; ++i) rhs[i] = dot(c.generators()[i], x);
        lambda = solve(c.gram().matrix(), rhs);
        Vector recon(m, 0.0);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < m; ++k) recon[k] += lambda[i] * c.generators()[i][k];
        double r2 = 0.0;
        for (int k = 0; k < m; ++k) {
            const double e = recon[k] - x[k];
            r2 += e * e;
        }
        const double xn = norm(x);
        if (std::sqrt(r2) > kResidualRel * std::max(xn, 1.0)) return false;
    }
    for (double l : lambda)
        if (l < -kCoeffTol) return false;
    return true;
}

bool contains_dual(const DualFrame& frame, const Vector& x) {
    for (const Vector& n : frame.normals)
        if (dot(n, x) < -kCoeffTol) return false;
    return true;
}

double angle_exact_2d(const GramMatrix& g) {
    if (g.dim() != 2) throw std::invalid_argument("angle_exact_2d: need a 2x2 Gram matrix");
    cholesky(g); // positive definiteness
    const double rho = correlation(g)(0, 1);
    return std::acos(rho) / (2.0 * std::numbers::pi);
}

double angle_exact_3d(const GramMatrix& g) {
    if (g.dim() != 3) throw std::invalid_argument("angle_exact_3d: need a 3x3 Gram matrix");
    const GramMatrix r = correlation(g);
    const Matrix l = cholesky(r); // throws NotPositiveDefinite for bad input
    // det of the unit-normalized Gram from the Cholesky diagonal.
    const double sqrt_det = l(0, 0) * l(1, 1) * l(2, 2);
    const double denom = 1.0 + r(0, 1) + r(0, 2) + r(1, 2);
    // Solid angle Omega with tan(Omega/2) = sqrt(det R)/denom; atan2 lands in
    // (0, pi), so Omega is branch-corrected into (0, 2*pi) automatically.
    const double omega = 2.0 * std::atan2(sqrt_det, denom);
    return omega / (4.0 * std::numbers::pi);
}

namespace detail {

std::vector<Vector> orthonormalize(std::span<const Vector> rows) {
    std::vector<Vector> q;
    q.reserve(rows.size());
    for (const Vector& row : rows) {
        Vector v = row;
        const double original = norm(row);
        for (const Vector& u : q) {
            const double p = dot(u, v);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= p * u[i];
        }
        const double n = norm(v);
        if (n <= kProjectionRel * std::max(original, 1e-300))
            throw std::invalid_argument("orthonormalize: dependent rows");
        for (double& x : v) x /= n;
        q.push_back(std::move(v));
    }
    return q;
}

bool origin_in_simplex_hull(const std::vector<Vector>& points) {
    const int k = int(points.size());
    const int r = int(points.front().size());
    if (k != r + 1) throw std::invalid_argument("origin_in_simplex_hull: need dim+1 points");
    // sum lambda_i p_i = 0, sum lambda_i = 1; unique solution generically.
    Matrix m(k, k);
    for (int row = 0; row < r; ++row)
        for (int i = 0; i < k; ++i) m(row, i) = points[i][row];
    for (int i = 0; i < k; ++i) m(r, i) = 1.0;
    Vector b(k, 0.0);
    b[r] = 1.0;
    const Vector lambda = solve(m, b); // Singular propagates to the caller
    for (double l : lambda)
        if (l < -kCoeffTol) return false;
    return true;
}

namespace {

// Carathéodory fallback for more points than dim+1: the origin lies in the
// hull iff it lies in the hull of some (dim+1)-subset.
bool origin_in_hull_subsets(const std::vector<Vector>& points, int r) {
    const int k = int(points.size());
    std::vector<int> idx(r + 1);
    for (int i = 0; i <= r; ++i) idx[i] = i;
    bool saw_singular = false;
    while (true) {
        std::vector<Vector> sub(r + 1);
        for (int i = 0; i <= r; ++i) sub[i] = points[idx[i]];
        try {
            if (origin_in_simplex_hull(sub)) return true;
        } catch (const Singular&) {
            saw_singular = true;
        }
        int pos = r;
        while (pos >= 0 && idx[pos] == k - (r + 1) + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i <= r; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (saw_singular)
        throw DegenerateProjection("subspace test: undecidable degenerate hull subsets");
    return false;
}

} // namespace
} // namespace detail

bool subspace_intersects(const SimplicialCone& c, std::span<const Vector> w_basis) {
    if (w_basis.empty()) throw std::invalid_argument("subspace_intersects: empty basis");
    const int m = c.ambient_dim();
    for (const Vector& w : w_basis)
        if (int(w.size()) != m)
            throw std::invalid_argument("subspace_intersects: basis dimension mismatch");

    const std::vector<Vector> q = detail::orthonormalize(w_basis);

    // Project generators onto the orthogonal complement of W. A vanishing
    // projection means the generator itself lies in W: an exact certificate.
    std::vector<Vector> proj;
    proj.reserve(c.dim());
    for (const Vector& v : c.generators()) {
        Vector p = v;
        for (const Vector& u : q) {
            const double s = dot(u, v);
            for (int i = 0; i < m; ++i) p[i] -= s * u[i];
        }
        if (norm(p) <= kProjectionRel * norm(v)) return true;
        proj.push_back(std::move(p));
    }

    // Work inside span(projections): coordinates in an orthonormal basis.
    std::vector<Vector> basis;
    basis.reserve(proj.size());
    for (const Vector& p : proj) {
        Vector v = p;
        for (const Vector& u : basis) {
            const double s = dot(u, v);
            for (int i = 0; i < m; ++i) v[i] -= s * u[i];
        }
        const double n = norm(v);
        if (n > 1e-9 * norm(p)) {
            for (double& x : v) x /= n;
            basis.push_back(std::move(v));
        }
    }
    const int rank = int(basis.size());
    const int k = int(proj.size());
    if (rank == k) return false; // independent projections: only lambda = 0 works

    std::vector<Vector> coords(k, Vector(rank));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < rank; ++j) coords[i][j] = dot(basis[j], proj[i]);

    if (k == rank + 1) {
        try {
            return detail::origin_in_simplex_hull(coords);
        } catch (const Singular&) {
            throw DegenerateProjection("subspace test: degenerate projected hull");
        }
    }
    return detail::origin_in_hull_subsets(coords, rank);
}

} // namespace solidangle
