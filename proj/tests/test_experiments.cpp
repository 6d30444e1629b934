#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "solidangle/errors.hpp"
#include "solidangle/experiments.hpp"

using namespace solidangle;

namespace {

const ResultRecord* find(const ExperimentReport& r, const std::string& label) {
    for (const auto& rec : r.results)
        if (rec.label == label) return &rec;
    return nullptr;
}

} // namespace

TEST_CASE("angle command: inline gram input, comparisons, exact oracle gate") {
    AngleOptions opt;
    opt.cone_input = "gram:3:0.5";
    opt.methods = {"orthant", "exact"};
    opt.samples = 50'000;
    const ExperimentReport r = cmd_angle(opt);
    CHECK(r.dimension == 3);
    CHECK(r.verdict);
    CHECK(find(r, "orthant") != nullptr);
    CHECK(find(r, "orthant_vs_exact") != nullptr);

    AngleOptions bad = opt;
    bad.cone_input = "gram:2:1.5"; // |rho| > 1: not positive definite
    CHECK_THROWS_AS((void)cmd_angle(bad), DegenerateCone);

    AngleOptions high = opt;
    high.cone_input = "gram:4:0.3";
    high.methods = {"exact"};
    CHECK_THROWS_AS((void)cmd_angle(high), std::invalid_argument);
}

TEST_CASE("angle command reads generator files") {
    const char* path = "cone_input_test.txt";
    {
        std::ofstream f(path);
        f << "1 0\n0.5 2\n";
    }
    AngleOptions opt;
    opt.cone_input = path;
    opt.methods = {"membership", "orthant"};
    opt.samples = 40'000;
    const ExperimentReport r = cmd_angle(opt);
    CHECK(r.dimension == 2);
    CHECK(r.verdict);
    std::remove(path);

    AngleOptions missing;
    missing.cone_input = "no_such_file.txt";
    missing.methods = {"orthant"};
    CHECK_THROWS_AS((void)cmd_angle(missing), std::invalid_argument);
}

TEST_CASE("verify-main carries both sides and their comparison") {
    VerifyMainOptions opt;
    opt.dim = 2;
    opt.samples = 100'000;
    opt.n_simplices = 40;
    opt.n_angle = 4'096;
    const ExperimentReport r = cmd_verify_main(opt);
    CHECK(r.verdict);
    CHECK(find(r, "alpha_gaussian_hull") != nullptr);
    CHECK(find(r, "alpha_regular_orthant") != nullptr);
    CHECK(find(r, "alpha_gaussian_direct") != nullptr);
    CHECK(find(r, "alpha_gaussian_hull_vs_alpha_regular_orthant") != nullptr);

    const double gh = *find(r, "gamma_gaussian_hull")->value;
    CHECK(gh == doctest::Approx(0.5).epsilon(0.02));

    VerifyMainOptions high = opt;
    high.dim = 4; // no direct route beyond d = 3
    high.samples = 30'000;
    const ExperimentReport r4 = cmd_verify_main(high);
    CHECK(find(r4, "alpha_gaussian_direct") == nullptr);
}

TEST_CASE("bounds command: grid validation and trend checks") {
    BoundsOptions opt;
    opt.dim = 3;
    opt.t_grid = {0.0, 0.5, 0.9};
    opt.samples = 20'000;
    const ExperimentReport r = cmd_bounds(opt);
    CHECK(r.verdict);
    CHECK(find(r, "gamma_s1(t=0.5)") != nullptr);
    CHECK(find(r, "cond_s2(t=0.9)") != nullptr);
    CHECK(find(r, "s1_vs_s2_at_t0")->comparison->pass); // same simplex at t = 0
    CHECK(find(r, "s1_trend_decreasing")->pass.value());
    CHECK(find(r, "s2_trend_increasing")->pass.value());

    BoundsOptions bad = opt;
    bad.t_grid = {0.0, 0.999}; // beyond the 0.995 cap
    CHECK_THROWS_AS((void)cmd_bounds(bad), std::invalid_argument);
    bad.t_grid = {0.5, 0.25};
    CHECK_THROWS_AS((void)cmd_bounds(bad), std::invalid_argument);
}

TEST_CASE("freeze command: per-n records and the reference comparison") {
    FreezeOptions opt;
    opt.dim = 3;
    opt.n_grid = {3, 30, 300};
    opt.replicates = 20;
    opt.n_angle = 2'048;
    const ExperimentReport r = cmd_freeze(opt);
    CHECK(r.verdict);
    CHECK(find(r, "mean_corr_deviation(n=3)") != nullptr);
    CHECK(find(r, "mean_lifted_angle(n=300)") != nullptr);
    CHECK(find(r, "largest_n_vs_regular") != nullptr);
    CHECK(find(r, "deviation_strictly_decreasing")->pass.value());

    FreezeOptions bad = opt;
    bad.n_grid = {2, 30}; // below d
    CHECK_THROWS_AS((void)cmd_freeze(bad), std::invalid_argument);
}

TEST_CASE("regions command: exact count, exact frequency sum, gamma consistency") {
    RegionsOptions opt;
    opt.dim = 3;
    opt.n_per_region = 1024;
    opt.n_angle = 20'000;
    const ExperimentReport r = cmd_regions(opt);
    CHECK(r.verdict);
    CHECK(*find(r, "region_count")->value == 14.0);
    CHECK(find(r, "frequency_sum_exact")->pass.value());
    CHECK(find(r, "internal_cones_present")->pass.value());
    CHECK(find(r, "gamma_census_vs_angle_sum")->comparison->pass);

    RegionsOptions bad = opt;
    bad.dim = 6;
    CHECK_THROWS_AS((void)cmd_regions(bad), std::invalid_argument);
}

TEST_CASE("replaying a command reproduces the report byte for byte (wall time aside)") {
    VerifyMainOptions opt;
    opt.dim = 2;
    opt.samples = 30'000;
    opt.n_simplices = 10;
    opt.n_angle = 1'024;
    const std::string a = to_json(cmd_verify_main(opt), false);
    const std::string b = to_json(cmd_verify_main(opt), false);
    CHECK(a == b);

    RegionsOptions ropt;
    ropt.dim = 2;
    ropt.n_per_region = 512;
    ropt.n_angle = 4'096;
    CHECK(to_json(cmd_regions(ropt), false) == to_json(cmd_regions(ropt), false));
}

TEST_CASE("report verdicts survive a serialization round trip") {
    BoundsOptions opt;
    opt.dim = 3;
    opt.t_grid = {0.0, 0.9};
    opt.samples = 10'000;
    const ExperimentReport r = cmd_bounds(opt);
    const ExperimentReport back = report_from_json(to_json(r));
    CHECK(recompute_verdict(back) == r.verdict);
}
