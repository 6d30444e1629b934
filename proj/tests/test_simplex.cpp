#include <doctest.h>

#include <cmath>
#include <set>

#include "solidangle/simplex.hpp"
#include "test_helpers.hpp"

using namespace solidangle;

namespace {
bool within(const AngleEstimate& e, double truth, double sigmas = 4.0) {
    return std::abs(e.value - truth) <= sigmas * e.std_error;
}

Simplex random_simplex(int d, RandomStream& stream) { return gaussian_simplex(d, stream); }
} // namespace

TEST_CASE("vertex cones: right simplex, regular simplex, vertex order irrelevance") {
    const auto right = Simplex::from_vertices({{0, 0}, {1, 0}, {0, 1}});
    const auto q = vertex_cone(right, 0);
    CHECK(testutil::max_abs_diff(q.gram().matrix(), Matrix::identity(2)) == 0.0);

    // regular simplex: vertices e_0..e_d in (d+1)-space
    std::vector<Vector> basis4;
    for (int k = 0; k < 4; ++k) {
        Vector e(4, 0.0);
        e[std::size_t(k)] = 1.0;
        basis4.push_back(e);
    }
    const auto regular = Simplex::from_vertices(basis4);
    const auto c0 = vertex_cone(regular, 0);
    CHECK(testutil::max_abs_diff(c0.gram().matrix(), testutil::regular_cone_matrix(3)) == 0.0);

    // permuting the other vertices leaves the cone set-equal
    const auto permuted = Simplex::from_vertices({basis4[0], basis4[3], basis4[1], basis4[2]});
    const auto c1 = vertex_cone(permuted, 0);
    RandomStream s(51, 0);
    for (int i = 0; i < 300; ++i) {
        const Vector x = s.gaussian_vector(4);
        CHECK(contains(c0, x) == contains(c1, x));
    }
}

TEST_CASE("degenerate vertex sets are rejected") {
    CHECK_THROWS_AS((void)Simplex::from_vertices({{0, 0}, {1, 1}, {2, 2}}), DegenerateCone);
}

TEST_CASE("angle sums: triangles are exactly 1/2, T^3 matches the closed form") {
    {
        RandomStream s(52, 0);
        const Simplex tri = random_simplex(2, s);
        CHECK(within(angle_sum(tri, 100'000, s), 0.5));
    }
    {
        // simplex in ambient 4-space: angles flow through Gram matrices only
        std::vector<Vector> basis4;
        for (int k = 0; k < 4; ++k) {
            Vector e(4, 0.0);
            e[std::size_t(k)] = 1.0;
            basis4.push_back(e);
        }
        RandomStream s(53, 0);
        const AngleEstimate g = angle_sum(Simplex::from_vertices(basis4), 200'000, s);
        CHECK(within(g, 4.0 * testutil::regular_angle_3d()));
    }
    {
        RandomStream s(54, 0);
        const AngleEstimate g = angle_sum(random_simplex(3, s), 50'000, s);
        CHECK(g.value > 0.0);
        CHECK(g.value < 0.5 + 4.0 * g.std_error);
    }
}

TEST_CASE("per-draw planar angle sums are exactly 1/2 via the closed form") {
    RandomStream s(55, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const Simplex tri = random_simplex(2, s);
        double total = 0.0;
        for (int i = 0; i <= 2; ++i) total += angle_exact_2d(vertex_cone(tri, i).gram());
        CHECK(std::abs(total - 0.5) <= 1e-10);
    }
}

TEST_CASE("angle sums are invariant under rigid motions (same stream)") {
    RandomStream s(56, 0);
    const Simplex t = random_simplex(3, s);
    // rotate by a fixed orthogonal matrix (Givens pair) and translate
    auto rotate = [](const Vector& v) {
        const double c = 0.6, sn = 0.8;
        Vector w = {c * v[0] - sn * v[1] + 1.0, sn * v[0] + c * v[1] - 2.0, v[2] + 0.25};
        return w;
    };
    std::vector<Vector> moved;
    for (const auto& v : t.vertices()) moved.push_back(rotate(v));
    const Simplex t2 = Simplex::from_vertices(moved);

    RandomStream s1(57, 1), s2(57, 1);
    const AngleEstimate a = angle_sum(t, 20'000, s1);
    const AngleEstimate b = angle_sum(t2, 20'000, s2);
    CHECK(a.value == b.value);
}

TEST_CASE("regular Gram family") {
    const GramMatrix g1 = regular_gram(1);
    CHECK(g1.dim() == 1);
    CHECK(g1(0, 0) == 2.0);
    CHECK(testutil::max_abs_diff(regular_gram(3).matrix(), testutil::regular_cone_matrix(3)) ==
          0.0);
    CHECK_NOTHROW((void)cholesky(regular_gram(50))); // positive definite far out
}

TEST_CASE("gaussian simplices: nondegenerate draws with centered vertices") {
    RandomStream s(58, 0);
    double mean = 0.0;
    const int reps = 10'000;
    for (int rep = 0; rep < reps; ++rep) {
        const Simplex t = gaussian_simplex(3, s); // construction validates nondegeneracy
        mean += t.vertices()[0][0];
    }
    mean /= reps;
    CHECK(std::abs(mean) <= 4.0 / std::sqrt(double(reps)));
}

TEST_CASE("lifted difference Gram freezes toward the regular simplex") {
    // n = d reproduces the plain Gaussian vertex cone in distribution:
    // compare mean angles over replicates.
    {
        const int reps = 60;
        double lifted_sum = 0.0, lifted_sq = 0.0, plain_sum = 0.0, plain_sq = 0.0;
        for (int rep = 0; rep < reps; ++rep) {
            RandomStream sl(59, std::uint64_t(rep));
            const double a =
                estimate_orthant(lifted_difference_gram(3, 3, sl), 4096, sl).value;
            lifted_sum += a;
            lifted_sq += a * a;
            RandomStream sp(60, std::uint64_t(rep));
            const double b =
                estimate_orthant(vertex_cone(gaussian_simplex(3, sp), 0).gram(), 4096, sp).value;
            plain_sum += b;
            plain_sq += b * b;
        }
        const double ml = lifted_sum / reps, mp = plain_sum / reps;
        const double vl = (lifted_sq / reps - ml * ml) / (reps - 1);
        const double vp = (plain_sq / reps - mp * mp) / (reps - 1);
        CHECK(std::abs(ml - mp) <= 4.0 * std::sqrt(vl + vp));
    }

    // correlations approach 1/2
    {
        double dev = 0.0;
        const int reps = 20;
        for (int rep = 0; rep < reps; ++rep) {
            RandomStream s(61, std::uint64_t(rep));
            const GramMatrix c = correlation(lifted_difference_gram(3, 10'000, s));
            dev += (std::abs(c(0, 1) - 0.5) + std::abs(c(0, 2) - 0.5) + std::abs(c(1, 2) - 0.5)) / 3;
        }
        CHECK(dev / reps <= 0.05);
    }

    // mean deviation decreasing across the n grid
    {
        const std::size_t grid[4] = {10, 100, 1000, 10000};
        double devs[4];
        for (int gi = 0; gi < 4; ++gi) {
            double dev = 0.0;
            const int reps = 50;
            for (int rep = 0; rep < reps; ++rep) {
                RandomStream s(62, std::uint64_t(gi * 1000 + rep));
                const GramMatrix c = correlation(lifted_difference_gram(3, grid[gi], s));
                dev +=
                    (std::abs(c(0, 1) - 0.5) + std::abs(c(0, 2) - 0.5) + std::abs(c(1, 2) - 0.5)) /
                    3;
            }
            devs[gi] = dev / reps;
        }
        CHECK(devs[0] > devs[1]);
        CHECK(devs[1] > devs[2]);
        CHECK(devs[2] > devs[3]);
    }

    // the angle of a deeply lifted Gram approaches the regular value
    {
        RandomStream s(63, 0);
        const AngleEstimate e = estimate_orthant(lifted_difference_gram(3, 100'000, s), 200'000, s);
        CHECK(std::abs(e.value - testutil::regular_angle_3d()) <= 4.0 * e.std_error + 0.002);
    }

    RandomStream s(64, 0);
    CHECK_THROWS_AS((void)lifted_difference_gram(3, 2, s), std::invalid_argument);
}

TEST_CASE("simplex families: common origin, explicit vertex, domain checks") {
    const Simplex a = family_s1(3, 0.0);
    const Simplex b = family_s2(3, 0.0);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t c = 0; c < 3; ++c) CHECK(a.vertices()[i][c] == b.vertices()[i][c]);

    const Simplex s1 = family_s1(3, 0.5);
    CHECK(s1.vertices()[3][0] == 0.5);
    CHECK(s1.vertices()[3][1] == 0.5);
    CHECK(s1.vertices()[3][2] == 0.5);

    CHECK_THROWS_AS((void)family_s1(3, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)family_s2(3, -0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)family_s1(2, 0.5), std::invalid_argument);
}

TEST_CASE("family angle sums head for 0 and 1/2") {
    RandomStream s(65, 0);
    const AngleEstimate g1 = angle_sum(family_s1(3, 0.99), 100'000, s);
    const AngleEstimate g2 = angle_sum(family_s2(3, 0.99), 100'000, s);
    CHECK(g1.value < 0.05);
    CHECK(g2.value > 0.40);
}

TEST_CASE("facet normals: unit corner triangle and the orthogonality contract") {
    const auto tri = Simplex::from_vertices({{0, 0}, {1, 0}, {0, 1}});
    const auto normals = facet_normals(tri);
    // opposite vertex 0: direction -(e1+e2)/sqrt(2); opposite e1: +e1; opposite e2: +e2
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(normals[0][0] == doctest::Approx(-r));
    CHECK(normals[0][1] == doctest::Approx(-r));
    CHECK(normals[1][0] == doctest::Approx(1.0));
    CHECK(normals[1][1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(normals[2][1] == doctest::Approx(1.0));

    RandomStream s(66, 0);
    for (int rep = 0; rep < 10; ++rep) {
        const Simplex t = random_simplex(4, s);
        const auto ns = facet_normals(t);
        for (int k = 0; k <= 4; ++k) {
            // orthogonal to every difference within the opposite facet
            int base = k == 0 ? 1 : 0;
            for (int j = 0; j <= 4; ++j) {
                if (j == k || j == base) continue;
                Vector diff(4);
                for (int c = 0; c < 4; ++c)
                    diff[std::size_t(c)] = t.vertices()[std::size_t(j)][std::size_t(c)] -
                                           t.vertices()[std::size_t(base)][std::size_t(c)];
                CHECK(std::abs(dot(ns[std::size_t(k)], diff)) <= 1e-10);
            }
            // oriented toward the opposite vertex
            Vector to_vertex(4);
            for (int c = 0; c < 4; ++c)
                to_vertex[std::size_t(c)] = t.vertices()[std::size_t(k)][std::size_t(c)] -
                                            t.vertices()[std::size_t(base)][std::size_t(c)];
            CHECK(dot(ns[std::size_t(k)], to_vertex) > 0.0);
        }
    }
}

TEST_CASE("the embedded regular simplex yields valid facet normals") {
    for (int d = 2; d <= 5; ++d) {
        const Simplex t = regular_embedded(d);
        CHECK(t.full_dimensional());
        const auto ns = facet_normals(t);
        CHECK(int(ns.size()) == d + 1);
        for (const auto& n : ns) CHECK(norm(n) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("region census: exact counts, exact frequency sum, internal cones") {
    RandomStream gen(67, 0);
    for (int d = 2; d <= 5; ++d) {
        const Simplex t = random_simplex(d, gen);
        RandomStream cs(68, std::uint64_t(d));
        const RegionCensus census = region_census(t, 1024, cs);
        CHECK(census.regions.size() == RegionCensus::expected_count(d));
        CHECK(census.frequency_sum() == 1.0); // dyadic frequencies: exact

        int single_minus = 0, single_plus = 0;
        for (const Region& r : census.regions) {
            single_minus += is_single_minus(r.pattern, d + 1) ? 1 : 0;
            single_plus += is_single_plus(r.pattern, d + 1) ? 1 : 0;
        }
        CHECK(single_minus == d + 1);
        CHECK(single_plus == d + 1);

        // every witness certifies its pattern against the facet normals
        const auto normals = facet_normals(t);
        for (const Region& r : census.regions) {
            std::uint32_t pat = 0;
            for (int kk = 0; kk <= d; ++kk) {
                double acc = 0.0;
                for (int c = 0; c < d; ++c)
                    acc += normals[std::size_t(kk)][std::size_t(c)] * r.witness[std::size_t(c)];
                if (acc >= 0.0) pat |= (std::uint32_t(1) << kk);
            }
            CHECK(pat == r.pattern);
        }
    }
}

TEST_CASE("census gamma matches the direct angle sum") {
    RandomStream gen(69, 0);
    const Simplex t = random_simplex(3, gen);
    RandomStream cs(70, 0), as(71, 0);
    const RegionCensus census = region_census(t, 8192, cs);
    const double gm = census.single_minus_mass();
    const AngleEstimate gamma_census{gm, binomial_std_error(gm, census.n_samples),
                                     census.n_samples, Method::membership, 70};
    const AngleEstimate gamma_direct = angle_sum(t, 100'000, as);
    CHECK(compare(gamma_census, gamma_direct).pass);

    // the symmetrized decomposition certifies the strict upper bound
    const double sym = 0.5 * (census.single_minus_mass() + census.single_plus_mass());
    CHECK(sym < 0.5);
    CHECK(std::abs(sym - gamma_census.value) <= 4.0 * std::sqrt(2.0) * gamma_census.std_error);
}

TEST_CASE("pattern helpers") {
    CHECK(pattern_string(0b0111, 4) == "+++-");
    CHECK(is_single_minus(0b0111, 4));
    CHECK(!is_single_minus(0b0011, 4));
    CHECK(is_single_plus(0b1000, 4));
    CHECK(!is_single_plus(0b1100, 4));
}
