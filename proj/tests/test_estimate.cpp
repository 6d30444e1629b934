#include <doctest.h>

#include <cmath>

#include "solidangle/estimate.hpp"
#include "solidangle/rng.hpp"
#include "test_helpers.hpp"

using namespace solidangle;

namespace {
bool within(const AngleEstimate& e, double truth, double sigmas = 4.0) {
    return std::abs(e.value - truth) <= sigmas * e.std_error;
}
} // namespace

TEST_CASE("membership: quadrant, octant, regular cone") {
    {
        RandomStream s(1001, 0);
        const auto quadrant = SimplicialCone::from_generators({{1, 0}, {0, 1}});
        const AngleEstimate e = estimate_membership(quadrant, 1'000'000, s);
        CHECK(within(e, 0.25));
        CHECK(e.std_error == doctest::Approx(4.3e-4).epsilon(0.1));
        CHECK(e.method == Method::membership);
    }
    {
        RandomStream s(1002, 0);
        const auto octant = SimplicialCone::from_generators({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
        CHECK(within(estimate_membership(octant, 200'000, s), 0.125));
    }
    {
        RandomStream s(1003, 0);
        // generators with the regular vertex-cone Gram
        const auto c = SimplicialCone::from_generators(
            {{-1, 1, 0, 0}, {-1, 0, 1, 0}, {-1, 0, 0, 1}});
        // not full-dimensional in 4-space: membership requires full dimension
        CHECK_THROWS_AS((void)estimate_membership(c, 10, s), std::invalid_argument);
    }
}

TEST_CASE("orthant: identity powers, planar value, regular cone, ray") {
    for (int d = 1; d <= 4; ++d) {
        RandomStream s(1100 + d, 0);
        const AngleEstimate e = estimate_orthant(GramMatrix(Matrix::identity(d)), 200'000, s);
        CHECK(within(e, std::pow(2.0, -d)));
    }
    {
        RandomStream s(1105, 0);
        const AngleEstimate e =
            estimate_orthant(GramMatrix(testutil::equicorrelated_matrix(2, 0.5)), 200'000, s);
        CHECK(within(e, 1.0 / 6.0));
    }
    {
        RandomStream s(1106, 0);
        const AngleEstimate e =
            estimate_orthant(GramMatrix(testutil::regular_cone_matrix(3)), 1'000'000, s);
        CHECK(within(e, testutil::regular_angle_3d()));
    }
    {
        RandomStream s(1107, 0);
        CHECK(within(estimate_orthant(GramMatrix(Matrix(1, 1, {2.0})), 100'000, s), 0.5));
    }
}

TEST_CASE("orthant depends on the Gram matrix only through its correlation, bit for bit") {
    const GramMatrix g(Matrix(3, 3, {4, 1, 0.5, 1, 9, -2, 0.5, -2, 6}));
    RandomStream s1(1200, 5);
    RandomStream s2(1200, 5);
    const AngleEstimate a = estimate_orthant(g, 50'000, s1);
    const AngleEstimate b = estimate_orthant(correlation(g), 50'000, s2);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("estimators are pure functions of (inputs, seed, stream, n)") {
    const GramMatrix g(testutil::regular_cone_matrix(3));
    RandomStream s1(7, 3), s2(7, 3);
    const AngleEstimate a = estimate_orthant(g, 30'000, s1);
    const AngleEstimate b = estimate_orthant(g, 30'000, s2);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("hull estimator: median case, regular value, cross-check at d=4") {
    {
        RandomStream s(1300, 0);
        const AngleEstimate e = estimate_hull(2, 1'000'000, s);
        CHECK(within(e, 1.0 / 6.0)); // hit probability 1/3, halved
        CHECK(e.std_error == doctest::Approx(std::sqrt((1.0 / 3) * (2.0 / 3) / 1e6) / 2).epsilon(0.05));
    }
    {
        RandomStream s(1301, 0);
        CHECK(within(estimate_hull(3, 400'000, s), testutil::regular_angle_3d()));
    }
    {
        RandomStream sh(1302, 0), so(1303, 0);
        const AngleEstimate h = estimate_hull(4, 300'000, sh);
        const AngleEstimate o =
            estimate_orthant(GramMatrix(testutil::regular_cone_matrix(4)), 300'000, so);
        CHECK(compare(h, o).pass);
    }
    RandomStream s(1304, 0);
    CHECK_THROWS_AS((void)estimate_hull(1, 10, s), std::invalid_argument);
}

TEST_CASE("crofton estimator: quadrant line test and the lifted regular cone") {
    {
        RandomStream s(1400, 0);
        const auto quadrant = SimplicialCone::from_generators({{1, 0}, {0, 1}});
        CHECK(within(estimate_crofton(quadrant, 200'000, s), 0.25));
    }
    {
        // 3-cone in ambient 4-space: the vertex cone of the regular simplex
        RandomStream s(1401, 0);
        const auto c = SimplicialCone::from_generators(
            {{-1, 1, 0, 0}, {-1, 0, 1, 0}, {-1, 0, 0, 1}});
        const AngleEstimate e = estimate_crofton(c, 200'000, s);
        CHECK(within(e, testutil::regular_angle_3d()));

        RandomStream so(1402, 0);
        CHECK(compare(e, estimate_orthant(c.gram(), 200'000, so)).pass);
    }
}

TEST_CASE("compare: exact tie passes, a ten-sigma gap fails") {
    const AngleEstimate a{0.25, 1e-3, 1000, Method::orthant, 1};
    CHECK(compare(a, a).z == 0.0);
    CHECK(compare(a, a).pass);
    AngleEstimate b = a;
    b.value += 10.0 * std::sqrt(2.0) * 1e-3;
    const ComparisonVerdict v = compare(a, b);
    CHECK(!v.pass);
    CHECK(v.z == doctest::Approx(10.0));
}

TEST_CASE("membership, orthant and crofton agree on random full-dimensional cones") {
    RandomStream gen(1500, 0);
    for (int d = 2; d <= 4; ++d) {
        for (int rep = 0; rep < 3; ++rep) {
            const auto c = testutil::random_cone(d, d, gen);
            RandomStream sm(1500, 10 + rep), so(1500, 20 + rep), sc(1500, 30 + rep);
            const std::size_t n = 40'000;
            const AngleEstimate em = estimate_membership(c, n, sm);
            const AngleEstimate eo = estimate_orthant(c.gram(), n, so);
            const AngleEstimate ec = estimate_crofton(c, n, sc);
            CHECK(compare(em, eo).pass);
            CHECK(compare(em, ec).pass);
            CHECK(compare(eo, ec).pass);
        }
    }
}

TEST_CASE("coverage: the exact value lands within 2 SE in at least 90% of runs") {
    const GramMatrix g(testutil::equicorrelated_matrix(2, 0.5));
    const double truth = 1.0 / 6.0;
    int covered = 0;
    for (int rep = 0; rep < 200; ++rep) {
        RandomStream s(31337, std::uint64_t(rep));
        const AngleEstimate e = estimate_orthant(g, 4096, s);
        if (std::abs(e.value - truth) <= 2.0 * e.std_error) ++covered;
    }
    CHECK(covered >= 180);
}
