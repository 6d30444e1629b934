#include "solidangle/simplex.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "solidangle/kernels.hpp"

namespace solidangle {

namespace {

std::vector<Vector> difference_vectors(const std::vector<Vector>& vertices, int i) {
    std::vector<Vector> diffs;
    diffs.reserve(vertices.size() - 1);
    const Vector& base = vertices[std::size_t(i)];
    for (std::size_t j = 0; j < vertices.size(); ++j) {
        if (int(j) == i) continue;
        Vector d(base.size());
        for (std::size_t c = 0; c < base.size(); ++c) d[c] = vertices[j][c] - base[c];
        diffs.push_back(std::move(d));
    }
    return diffs;
}

} // namespace

Simplex::Simplex(std::vector<Vector> vertices, int ambient)
    : ambient_dim_(ambient), vertices_(std::move(vertices)) {}

Simplex Simplex::from_vertices(std::vector<Vector> vertices) {
    if (vertices.size() < 2) throw std::invalid_argument("simplex: need at least 2 vertices");
    const int m = int(vertices.front().size());
    for (const auto& v : vertices)
        if (int(v.size()) != m) throw std::invalid_argument("simplex: vertex dimension mismatch");
    if (int(vertices.size()) > m + 1)
        throw DegenerateCone("simplex: more vertices than an m-simplex allows");
    // Affine independence: the difference Gram at vertex 0 must be positive definite.
    try {
        cholesky(gram(difference_vectors(vertices, 0)));
    } catch (const NotPositiveDefinite&) {
        throw DegenerateCone("simplex: affinely dependent vertices");
    }
    return Simplex(std::move(vertices), m);
}

SimplicialCone vertex_cone(const Simplex& s, int i) {
    if (i < 0 || i > s.dim()) throw std::invalid_argument("vertex_cone: index out of range");
    return SimplicialCone::from_generators(difference_vectors(s.vertices(), i));
}

AngleEstimate angle_sum(const Simplex& s, std::size_t n, RandomStream& stream) {
    double total = 0.0;
    double var = 0.0;
    for (int i = 0; i <= s.dim(); ++i) {
        const AngleEstimate e = estimate_orthant(vertex_cone(s, i).gram(), n, stream);
        total += e.value;
        var += e.std_error * e.std_error;
    }
    return {total, std::sqrt(var), std::uint64_t(s.dim() + 1) * n, Method::orthant, stream.seed()};
}

GramMatrix regular_gram(int d) {
    if (d < 1) throw std::invalid_argument("regular_gram: d must be >= 1");
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = i == j ? 2.0 : 1.0;
    return GramMatrix(std::move(g));
}

Simplex gaussian_simplex(int d, RandomStream& stream) {
    if (d < 1) throw std::invalid_argument("gaussian_simplex: d must be >= 1");
    std::vector<Vector> vertices(std::size_t(d) + 1);
    for (auto& v : vertices) v = stream.gaussian_vector(d);
    return Simplex::from_vertices(std::move(vertices));
}

GramMatrix lifted_difference_gram(int d, std::size_t n, RandomStream& stream) {
    if (d < 1) throw std::invalid_argument("lifted_difference_gram: d must be >= 1");
    if (n < std::size_t(d)) throw std::invalid_argument("lifted_difference_gram: need n >= d");
    // One coordinate row at a time: draw the d+1 coordinates, accumulate the
    // rank-one update of the difference Gram.
    Matrix g(d, d);
    std::vector<double> row(std::size_t(d) + 1);
    for (std::size_t t = 0; t < n; ++t) {
        stream.fill_gaussian(row);
        for (int i = 0; i < d; ++i) {
            const double di = row[std::size_t(i) + 1] - row[0];
            for (int j = i; j < d; ++j) g(i, j) += di * (row[std::size_t(j) + 1] - row[0]);
        }
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) g(j, i) = g(i, j);
    return GramMatrix(std::move(g));
}

namespace {
void check_family_args(int d, double t) {
    if (d < 3) throw std::invalid_argument("simplex family: need d >= 3");
    if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("simplex family: need t in [0,1)");
}
} // namespace

Simplex family_s1(int d, double t) {
    check_family_args(d, t);
    std::vector<Vector> v(std::size_t(d) + 1, Vector(std::size_t(d), 0.0));
    for (int i = 1; i < d; ++i) v[std::size_t(i)][std::size_t(i) - 1] = 1.0;
    for (int c = 0; c < d - 1; ++c) v[std::size_t(d)][std::size_t(c)] = t;
    v[std::size_t(d)][std::size_t(d) - 1] = 1.0 - t;
    return Simplex::from_vertices(std::move(v));
}

Simplex family_s2(int d, double t) {
    check_family_args(d, t);
    std::vector<Vector> v(std::size_t(d) + 1, Vector(std::size_t(d), 0.0));
    const double shift = t / double(d);
    for (int i = 1; i <= d; ++i) {
        for (int c = 0; c < d; ++c) v[std::size_t(i)][std::size_t(c)] = -shift;
        v[std::size_t(i)][std::size_t(i) - 1] += 1.0;
    }
    return Simplex::from_vertices(std::move(v));
}

std::vector<Vector> facet_normals(const Simplex& s) {
    if (!s.full_dimensional())
        throw std::invalid_argument("facet_normals: simplex must be full-dimensional");
    const int d = s.dim();
    // Barycentric coordinates solve M lambda = (x; 1) with columns (x_j; 1).
    // The gradient of lambda_k is the first d entries of row k of M^-1 and
    // points from the facet opposite x_k toward x_k.
    Matrix mt(d + 1, d + 1); // M transposed: row j = (x_j; 1)
    for (int j = 0; j <= d; ++j) {
        for (int c = 0; c < d; ++c) mt(j, c) = s.vertices()[std::size_t(j)][std::size_t(c)];
        mt(j, d) = 1.0;
    }
    std::vector<Vector> normals(std::size_t(d) + 1);
    Vector e(std::size_t(d) + 1, 0.0);
    for (int k = 0; k <= d; ++k) {
        std::fill(e.begin(), e.end(), 0.0);
        e[std::size_t(k)] = 1.0;
        Vector row;
        try {
            row = solve(mt, e);
        } catch (const Singular&) {
            throw DegenerateCone("facet_normals: degenerate simplex");
        }
        row.resize(std::size_t(d));
        const double nn = norm(row);
        for (double& x : row) x /= nn;
        normals[std::size_t(k)] = std::move(row);
    }
    return normals;
}

Simplex regular_embedded(int d) {
    if (d < 1) throw std::invalid_argument("regular_embedded: d must be >= 1");
    // Center the standard-basis vertex set, then drop the last coordinate.
    const double c = 1.0 / double(d + 1);
    std::vector<Vector> v(std::size_t(d) + 1, Vector(std::size_t(d), -c));
    for (int k = 0; k < d; ++k) v[std::size_t(k)][std::size_t(k)] += 1.0;
    return Simplex::from_vertices(std::move(v));
}

double RegionCensus::frequency_sum() const {
    double s = 0.0;
    for (const Region& r : regions) s += r.angle.value;
    return s;
}

double RegionCensus::single_minus_mass() const {
    double s = 0.0;
    for (const Region& r : regions)
        if (is_single_minus(r.pattern, dim + 1)) s += r.angle.value;
    return s;
}

double RegionCensus::single_plus_mass() const {
    double s = 0.0;
    for (const Region& r : regions)
        if (is_single_plus(r.pattern, dim + 1)) s += r.angle.value;
    return s;
}

std::string pattern_string(std::uint32_t pattern, int bits) {
    std::string s(std::size_t(bits), '-');
    for (int k = 0; k < bits; ++k)
        if (pattern & (std::uint32_t(1) << k)) s[std::size_t(k)] = '+';
    return s;
}

bool is_single_minus(std::uint32_t pattern, int bits) {
    const std::uint32_t full = (std::uint32_t(1) << bits) - 1;
    const std::uint32_t missing = full & ~pattern;
    return missing != 0 && std::has_single_bit(missing);
}

bool is_single_plus(std::uint32_t pattern, int bits) {
    const std::uint32_t full = (std::uint32_t(1) << bits) - 1;
    return (pattern & full) != 0 && std::has_single_bit(pattern & full);
}

namespace {

constexpr std::size_t kCensusBatch = 4096;

std::uint64_t next_pow2(std::uint64_t v) {
    std::uint64_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

struct NormalMatrix {
    Matrix a;  // (d+1) x d, unit rows
    int d = 0;
};

// One batch of uniform directions; xbuf keeps the coordinate-major draws so a
// caller can recover the direction behind pattern pbuf[t].
void sample_pattern_batch(const NormalMatrix& nm, RandomStream& stream, std::size_t batch,
                          std::vector<double>& xbuf, std::vector<std::uint32_t>& pbuf) {
    xbuf.resize(std::size_t(nm.d) * batch);
    for (std::size_t t = 0; t < batch; ++t)
        for (int c = 0; c < nm.d; ++c) xbuf[std::size_t(c) * batch + t] = stream.gaussian();
    pbuf.resize(batch);
    kernels::active_kernels().sign_patterns(nm.a.data(), nm.d + 1, nm.d, xbuf.data(), batch,
                                            pbuf.data());
}

// The pattern of a single direction, same >= 0 convention as the kernels.
std::uint32_t pattern_of(const NormalMatrix& nm, const Vector& u) {
    std::uint32_t pat = 0;
    for (int r = 0; r <= nm.d; ++r) {
        double acc = 0.0;
        for (int c = 0; c < nm.d; ++c) acc = acc + nm.a(r, c) * u[std::size_t(c)];
        if (acc >= 0.0) pat |= (std::uint32_t(1) << r);
    }
    return pat;
}

// Deterministic completion: express the last normal in the basis of the first
// d ones (one solve); a candidate pattern is feasible iff the induced linear
// functional can take the required sign on the partial-pattern orthant, and in
// that case an explicit interior direction falls out of the same algebra.
void complete_census(const NormalMatrix& nm, std::map<std::uint32_t, Vector>& witnesses) {
    const int d = nm.d;
    Matrix first(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) first(r, c) = nm.a(r, c);
    Vector last(std::size_t(d), 0.0);
    for (int c = 0; c < d; ++c) last[std::size_t(c)] = nm.a(d, c);

    Vector coeff;
    try {
        coeff = solve(transpose(first), last);
    } catch (const Singular&) {
        throw GeneralPositionViolation("region census: dependent normal subset");
    }
    for (double a : coeff)
        if (a == 0.0) throw GeneralPositionViolation("region census: exactly dependent normals");

    std::set<std::uint32_t> feasible;
    Vector y(std::size_t(d), 0.0);
    for (std::uint32_t part = 0; part < (std::uint32_t(1) << d); ++part) {
        for (int last_sign = 0; last_sign < 2; ++last_sign) {
            const double want = last_sign ? 1.0 : -1.0;
            double s_match = 0.0, s_other = 0.0;
            for (int k = 0; k < d; ++k) {
                const double ek = (part & (std::uint32_t(1) << k)) ? 1.0 : -1.0;
                const double v = coeff[std::size_t(k)] * ek;
                if (v * want > 0.0) s_match += std::abs(v);
                else s_other += std::abs(v);
            }
            if (s_match == 0.0) continue; // this last-sign is infeasible
            const std::uint32_t pattern = part | (last_sign ? (std::uint32_t(1) << d) : 0);
            feasible.insert(pattern);
            if (witnesses.contains(pattern)) continue;

            const double delta = s_other > 0.0 ? std::min(1.0, s_match / (2.0 * s_other)) : 1.0;
            for (int k = 0; k < d; ++k) {
                const double ek = (part & (std::uint32_t(1) << k)) ? 1.0 : -1.0;
                const bool matches = coeff[std::size_t(k)] * ek * want > 0.0;
                y[std::size_t(k)] = ek * (matches ? 1.0 : delta);
            }
            Vector u;
            try {
                u = solve(first, y);
            } catch (const Singular&) {
                throw GeneralPositionViolation("region census: witness solve failed");
            }
            if (pattern_of(nm, u) != pattern)
                throw GeneralPositionViolation("region census: witness verification failed");
            witnesses.emplace(pattern, std::move(u));
        }
    }
    if (feasible.size() != RegionCensus::expected_count(d))
        throw GeneralPositionViolation("region census: feasible pattern count mismatch");
    for (const auto& [pattern, witness] : witnesses)
        if (!feasible.contains(pattern))
            throw GeneralPositionViolation("region census: sampled pattern outside feasible set");
}

} // namespace

RegionCensus region_census(const Simplex& s, std::size_t n_per_region, RandomStream& stream) {
    const int d = s.dim();
    const std::uint32_t cap = RegionCensus::expected_count(d);
    const std::vector<Vector> normals = facet_normals(s);

    NormalMatrix nm;
    nm.d = d;
    nm.a = Matrix(d + 1, d);
    for (int r = 0; r <= d; ++r)
        for (int c = 0; c < d; ++c) nm.a(r, c) = normals[std::size_t(r)][std::size_t(c)];

    std::map<std::uint32_t, Vector> witnesses;
    std::vector<double> xbuf;
    std::vector<std::uint32_t> pbuf;

    // Sampling phase: run until the count stops moving (window of 10x the
    // current count, floor one batch) or everything is found.
    std::size_t since_new = 0;
    while (witnesses.size() < cap) {
        sample_pattern_batch(nm, stream, kCensusBatch, xbuf, pbuf);
        bool found_new = false;
        for (std::size_t t = 0; t < pbuf.size(); ++t) {
            if (!witnesses.contains(pbuf[t])) {
                Vector u(std::size_t(d), 0.0);
                for (int c = 0; c < d; ++c) u[std::size_t(c)] = xbuf[std::size_t(c) * pbuf.size() + t];
                witnesses.emplace(pbuf[t], std::move(u));
                found_new = true;
                if (witnesses.size() > cap)
                    throw GeneralPositionViolation("region census: more regions than general position allows");
            }
        }
        since_new = found_new ? 0 : since_new + pbuf.size();
        if (since_new >= std::max<std::size_t>(10 * witnesses.size(), kCensusBatch)) break;
    }

    // Deterministic completion also cross-checks every sampled pattern.
    complete_census(nm, witnesses);

    // Counting phase over a power of two, so frequencies are exact dyadics.
    const std::uint64_t total = next_pow2(std::uint64_t(std::max<std::size_t>(n_per_region, 1)) * cap);
    std::map<std::uint32_t, std::uint64_t> counts;
    for (const auto& [pattern, witness] : witnesses) counts[pattern] = 0;
    std::uint64_t done = 0;
    while (done < total) {
        const std::size_t b = std::size_t(std::min<std::uint64_t>(kCensusBatch, total - done));
        sample_pattern_batch(nm, stream, b, xbuf, pbuf);
        for (std::uint32_t p : pbuf) {
            auto it = counts.find(p);
            if (it == counts.end())
                throw GeneralPositionViolation("region census: pattern outside certified set");
            ++it->second;
        }
        done += b;
    }

    RegionCensus census;
    census.dim = d;
    census.n_samples = total;
    census.regions.reserve(witnesses.size());
    for (auto& [pattern, witness] : witnesses) {
        Region r;
        r.pattern = pattern;
        r.hits = counts[pattern];
        const double f = double(r.hits) / double(total); // exact dyadic
        r.angle = {f, binomial_std_error(f, total), total, Method::membership, stream.seed()};
        r.witness = std::move(witness);
        census.regions.push_back(std::move(r));
    }
    return census;
}

} // namespace solidangle
