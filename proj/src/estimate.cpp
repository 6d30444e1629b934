#include "solidangle/estimate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "solidangle/kernels.hpp"

namespace solidangle {

namespace {

constexpr double kCoeffTol = 1e-10;  // same band as cone membership
constexpr std::size_t kBlock = 4096; // trials per kernel batch

// Draws are trial-major (all coordinates of trial t before trial t+1), so the
// consumed sample sequence does not depend on the batch size; the scatter into
// the coordinate-major layout is what the kernels want.
void fill_block(RandomStream& stream, int dim, std::size_t trials, std::vector<double>& x) {
    x.resize(std::size_t(dim) * trials);
    for (std::size_t t = 0; t < trials; ++t)
        for (int c = 0; c < dim; ++c) x[std::size_t(c) * trials + t] = stream.gaussian();
}

std::size_t count_hits(const Matrix& a, std::size_t n, double threshold, RandomStream& stream) {
    const auto& k = kernels::active_kernels();
    std::vector<double> x;
    std::size_t hits = 0;
    std::size_t done = 0;
    while (done < n) {
        const std::size_t b = std::min(kBlock, n - done);
        fill_block(stream, a.cols(), b, x);
        hits += k.signtest_count(a.data(), a.rows(), a.cols(), x.data(), b, threshold);
        done += b;
    }
    return hits;
}

} // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::membership: return "membership";
        case Method::orthant: return "orthant";
        case Method::hull: return "hull";
        case Method::crofton: return "crofton";
        case Method::exact: return "exact";
    }
    return "unknown";
}

Method method_from_name(const std::string& name) {
    if (name == "membership") return Method::membership;
    if (name == "orthant") return Method::orthant;
    if (name == "hull") return Method::hull;
    if (name == "crofton") return Method::crofton;
    if (name == "exact") return Method::exact;
    throw std::invalid_argument("unknown method: " + name);
}

double binomial_std_error(double p_hat, std::size_t n) {
    return std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) / double(n));
}

AngleEstimate estimate_membership(const SimplicialCone& c, std::size_t n, RandomStream& stream) {
    if (n < 1) throw std::invalid_argument("estimate_membership: n must be >= 1");
    if (!c.full_dimensional())
        throw std::invalid_argument("estimate_membership: cone must be full-dimensional");
    const DualFrame frame = dual_normals(c);
    const int d = c.dim();
    Matrix a(d, d);
    for (int r = 0; r < d; ++r)
        for (int j = 0; j < d; ++j) a(r, j) = frame.normals[r][j];

    const std::size_t hits = count_hits(a, n, -kCoeffTol, stream);
    const double p = double(hits) / double(n);
    return {p, binomial_std_error(p, n), n, Method::membership, stream.seed()};
}

AngleEstimate estimate_orthant(const GramMatrix& g, std::size_t n, RandomStream& stream) {
    if (n < 1) throw std::invalid_argument("estimate_orthant: n must be >= 1");
    // Normalize first: the sampled sign pattern depends on correlations only,
    // and correlation() is bitwise idempotent.
    const Matrix chol = cholesky(inverse(correlation(g)));
    const std::size_t hits = count_hits(chol, n, 0.0, stream);
    const double p = double(hits) / double(n);
    return {p, binomial_std_error(p, n), n, Method::orthant, stream.seed()};
}

AngleEstimate estimate_hull(int d, std::size_t n, RandomStream& stream) {
    if (d < 2) throw std::invalid_argument("estimate_hull: need dimension >= 2");
    if (n < 1) throw std::invalid_argument("estimate_hull: n must be >= 1");
    const std::size_t resample_budget = n / 1000;

    const int k = d + 1;      // points per trial
    const int pdim = d - 1;   // ambient dimension of the points
    std::vector<Vector> pts(static_cast<std::size_t>(k),
                            Vector(static_cast<std::size_t>(std::max(pdim, 1)), 0.0));
    Matrix m(d, d);
    Vector b(std::size_t(d), 0.0);
    b[std::size_t(d - 1)] = 1.0;

    std::size_t hits = 0;
    std::size_t resamples = 0;
    for (std::size_t trial = 0; trial < n; ++trial) {
        for (;;) {
            for (int i = 0; i < k; ++i)
                for (int r = 0; r < pdim; ++r) pts[std::size_t(i)][std::size_t(r)] = stream.gaussian();
            // Difference columns plus the normalization row: 0 in the hull of
            // the differences iff all barycentric coefficients are nonnegative.
            for (int r = 0; r < pdim; ++r)
                for (int i = 0; i < d; ++i)
                    m(r, i) = pts[std::size_t(i + 1)][std::size_t(r)] - pts[0][std::size_t(r)];
            for (int i = 0; i < d; ++i) m(d - 1, i) = 1.0;
            try {
                const Vector lambda = solve(m, b);
                bool hit = true;
                for (double l : lambda)
                    if (l < -kCoeffTol) { hit = false; break; }
                hits += hit ? 1 : 0;
                break;
            } catch (const Singular&) {
                if (++resamples > resample_budget)
                    throw NumericalInstability("estimate_hull: resample budget exceeded");
            }
        }
    }
    const double p = double(hits) / double(n);
    return {0.5 * p, 0.5 * binomial_std_error(p, n), n, Method::hull, stream.seed()};
}

AngleEstimate estimate_crofton(const SimplicialCone& c, std::size_t n, RandomStream& stream) {
    if (n < 1) throw std::invalid_argument("estimate_crofton: n must be >= 1");
    const int k = c.dim();
    const int m = c.ambient_dim();
    const int wdim = m - k + 1;
    const std::size_t resample_budget = n / 1000;

    std::vector<Vector> basis(static_cast<std::size_t>(wdim), Vector(static_cast<std::size_t>(m), 0.0));
    std::size_t hits = 0;
    std::size_t resamples = 0;
    for (std::size_t trial = 0; trial < n; ++trial) {
        for (;;) {
            for (auto& w : basis) stream.fill_gaussian(w);
            try {
                hits += subspace_intersects(c, basis) ? 1 : 0;
                break;
            } catch (const DegenerateProjection&) {
                if (++resamples > resample_budget)
                    throw NumericalInstability("estimate_crofton: resample budget exceeded");
            }
        }
    }
    const double p = double(hits) / double(n);
    return {0.5 * p, 0.5 * binomial_std_error(p, n), n, Method::crofton, stream.seed()};
}

ComparisonVerdict compare(const AngleEstimate& a, const AngleEstimate& b,
                          std::string label_a, std::string label_b) {
    ComparisonVerdict v;
    v.label_a = std::move(label_a);
    v.label_b = std::move(label_b);
    v.diff = std::abs(a.value - b.value);
    v.combined_se = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
    if (v.combined_se > 0.0)
        v.z = v.diff / v.combined_se;
    else
        v.z = v.diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    v.pass = v.z <= 4.0;
    return v;
}

} // namespace solidangle
