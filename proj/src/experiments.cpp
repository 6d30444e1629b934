#include "solidangle/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "solidangle/cone.hpp"
#include "solidangle/simplex.hpp"

namespace solidangle {

namespace {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string format_param(std::uint64_t x) { return std::to_string(x); }

// Short form for labels; parameters keep the lossless 17-digit form.
std::string format_label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

double exact_regular_angle(int d) {
    if (d == 1) return 0.5;
    if (d == 2) return angle_exact_2d(regular_gram(2));
    if (d == 3) return angle_exact_3d(regular_gram(3));
    throw std::invalid_argument("exact angle available only for d <= 3");
}

GramMatrix equicorrelated(int d, double rho) {
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = i == j ? 1.0 : rho;
    return GramMatrix(std::move(g));
}

// Generators realizing a Gram matrix: rows of the Cholesky factor.
std::vector<Vector> generators_from_gram(const GramMatrix& g) {
    const Matrix l = cholesky(g);
    std::vector<Vector> gens(std::size_t(g.dim()), Vector(std::size_t(g.dim())));
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j) gens[std::size_t(i)][std::size_t(j)] = l(i, j);
    return gens;
}

SimplicialCone parse_cone_input(const std::string& input) {
    if (input.rfind("gram:", 0) == 0) {
        // gram:d:rho -- equicorrelated unit-diagonal Gram.
        const auto first = input.find(':');
        const auto second = input.find(':', first + 1);
        if (second == std::string::npos)
            throw std::invalid_argument("cone input: expected gram:d:rho");
        int d = 0;
        double rho = 0.0;
        try {
            d = std::stoi(input.substr(first + 1, second - first - 1));
            rho = std::stod(input.substr(second + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("cone input: expected gram:d:rho");
        }
        if (d < 1) throw std::invalid_argument("cone input: dimension must be >= 1");
        try {
            return SimplicialCone::from_generators(generators_from_gram(equicorrelated(d, rho)));
        } catch (const NotPositiveDefinite&) {
            throw DegenerateCone("cone input: gram:d:rho is not positive definite");
        }
    }
    std::ifstream in(input);
    if (!in) throw std::invalid_argument("cone input: cannot open file '" + input + "'");
    std::vector<Vector> generators;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        Vector v;
        double x;
        while (row >> x) v.push_back(x);
        if (!v.empty()) generators.push_back(std::move(v));
    }
    if (generators.empty()) throw std::invalid_argument("cone input: no generators in file");
    return SimplicialCone::from_generators(std::move(generators));
}

void add_param(ExperimentReport& r, std::string key, std::string value) {
    r.parameters.emplace_back(std::move(key), std::move(value));
}

} // namespace

ExperimentReport cmd_angle(const AngleOptions& opt) {
    Stopwatch timer;
    if (opt.methods.empty()) throw std::invalid_argument("angle: need at least one method");
    const SimplicialCone cone = parse_cone_input(opt.cone_input);

    ExperimentReport r;
    r.experiment = "angle";
    r.dimension = cone.dim();
    add_param(r, "input", opt.cone_input);
    std::string joined;
    for (const auto& m : opt.methods) joined += (joined.empty() ? "" : ",") + m;
    add_param(r, "method", joined);
    add_param(r, "samples", format_param(opt.samples));
    add_param(r, "seed", format_param(opt.seed));
    add_param(r, "stream", format_param(opt.stream));

    std::vector<std::pair<std::string, AngleEstimate>> estimates;
    std::uint64_t offset = 1;
    for (const std::string& name : opt.methods) {
        const Method method = method_from_name(name);
        RandomStream stream(opt.seed, opt.stream + offset++);
        AngleEstimate est;
        switch (method) {
            case Method::membership:
                est = estimate_membership(cone, opt.samples, stream);
                break;
            case Method::orthant:
                est = estimate_orthant(cone.gram(), opt.samples, stream);
                break;
            case Method::crofton:
                est = estimate_crofton(cone, opt.samples, stream);
                break;
            case Method::hull:
                throw std::invalid_argument("angle: the hull estimator targets the Gaussian "
                                            "simplex, use verify-main");
            case Method::exact: {
                double v = 0.0;
                if (cone.dim() == 1) v = 0.5;
                else if (cone.dim() == 2) v = angle_exact_2d(cone.gram());
                else if (cone.dim() == 3) v = angle_exact_3d(cone.gram());
                else throw std::invalid_argument("angle: exact oracle available only for d <= 3");
                est = {v, 0.0, 0, Method::exact, opt.seed};
                break;
            }
        }
        estimates.emplace_back(name, est);
        r.results.push_back(ResultRecord::make_estimate(name, est));
    }
    for (std::size_t i = 0; i < estimates.size(); ++i)
        for (std::size_t j = i + 1; j < estimates.size(); ++j)
            r.results.push_back(ResultRecord::make_comparison(
                estimates[i].first + "_vs_" + estimates[j].first,
                compare(estimates[i].second, estimates[j].second, estimates[i].first,
                        estimates[j].first)));

    r.verdict = recompute_verdict(r);
    r.wall_time_s = timer.seconds();
    return r;
}

ExperimentReport cmd_verify_main(const VerifyMainOptions& opt) {
    Stopwatch timer;
    if (opt.dim < 2) throw std::invalid_argument("verify-main: need d >= 2");
    const int d = opt.dim;

    ExperimentReport r;
    r.experiment = "verify-main";
    r.dimension = d;
    add_param(r, "samples", format_param(opt.samples));
    add_param(r, "n_simplices", format_param(opt.n_simplices));
    add_param(r, "n_angle", format_param(opt.n_angle));
    add_param(r, "seed", format_param(opt.seed));
    add_param(r, "stream", format_param(opt.stream));

    RandomStream hull_stream(opt.seed, opt.stream + 1);
    RandomStream orthant_stream(opt.seed, opt.stream + 2);
    RandomStream direct_stream(opt.seed, opt.stream + 3);

    const AngleEstimate a_hull = estimate_hull(d, opt.samples, hull_stream);
    const AngleEstimate a_reg = estimate_orthant(regular_gram(d), opt.samples, orthant_stream);

    r.results.push_back(ResultRecord::make_estimate("alpha_gaussian_hull", a_hull));
    r.results.push_back(ResultRecord::make_estimate("alpha_regular_orthant", a_reg));
    r.results.push_back(ResultRecord::make_scalar("gamma_gaussian_hull", (d + 1) * a_hull.value));
    r.results.push_back(ResultRecord::make_scalar("gamma_regular_orthant", (d + 1) * a_reg.value));

    std::vector<std::pair<std::string, AngleEstimate>> sides = {
        {"alpha_gaussian_hull", a_hull}, {"alpha_regular_orthant", a_reg}};

    if (d <= 3 && opt.n_simplices > 0) {
        // Direct route: average the angle sum of sampled Gaussian simplices.
        double sum = 0.0, sumsq = 0.0;
        for (std::size_t i = 0; i < opt.n_simplices; ++i) {
            const Simplex s = gaussian_simplex(d, direct_stream);
            const double g = angle_sum(s, opt.n_angle, direct_stream).value;
            sum += g;
            sumsq += g * g;
        }
        const double ns = double(opt.n_simplices);
        const double mean_gamma = sum / ns;
        const double sd = ns > 1 ? std::sqrt(std::max(sumsq / ns - mean_gamma * mean_gamma, 0.0) /
                                             (ns - 1.0))
                                 : 0.0;
        const AngleEstimate a_direct{mean_gamma / (d + 1), sd / (d + 1), opt.n_simplices,
                                     Method::orthant, opt.seed};
        r.results.push_back(ResultRecord::make_estimate("alpha_gaussian_direct", a_direct));
        r.results.push_back(ResultRecord::make_scalar("gamma_gaussian_direct", mean_gamma));
        sides.emplace_back("alpha_gaussian_direct", a_direct);
    }

    for (std::size_t i = 0; i < sides.size(); ++i)
        for (std::size_t j = i + 1; j < sides.size(); ++j)
            r.results.push_back(ResultRecord::make_comparison(
                sides[i].first + "_vs_" + sides[j].first,
                compare(sides[i].second, sides[j].second, sides[i].first, sides[j].first)));

    r.verdict = recompute_verdict(r);
    r.wall_time_s = timer.seconds();
    return r;
}

ExperimentReport cmd_bounds(const BoundsOptions& opt) {
    Stopwatch timer;
    if (opt.dim < 3) throw std::invalid_argument("bounds: need d >= 3");
    if (opt.t_grid.empty()) throw std::invalid_argument("bounds: empty t grid");
    for (std::size_t i = 0; i < opt.t_grid.size(); ++i) {
        if (!(opt.t_grid[i] >= 0.0 && opt.t_grid[i] <= 0.995))
            throw std::invalid_argument("bounds: t values must lie in [0, 0.995]");
        if (i > 0 && !(opt.t_grid[i] > opt.t_grid[i - 1]))
            throw std::invalid_argument("bounds: t grid must be strictly increasing");
    }

    ExperimentReport r;
    r.experiment = "bounds";
    r.dimension = opt.dim;
    std::string grid;
    for (double t : opt.t_grid) grid += (grid.empty() ? "" : ",") + format_real(t);
    add_param(r, "t_grid", grid);
    add_param(r, "samples", format_param(opt.samples));
    add_param(r, "seed", format_param(opt.seed));
    add_param(r, "stream", format_param(opt.stream));

    RandomStream s1_stream(opt.seed, opt.stream + 1);
    RandomStream s2_stream(opt.seed, opt.stream + 2);

    auto worst_condition = [](const Simplex& s) {
        double worst = 0.0;
        for (int i = 0; i <= s.dim(); ++i)
            worst = std::max(worst, one_norm_condition(vertex_cone(s, i).gram()));
        return worst;
    };

    std::vector<AngleEstimate> g1, g2;
    for (double t : opt.t_grid) {
        const Simplex s1 = family_s1(opt.dim, t);
        const Simplex s2 = family_s2(opt.dim, t);
        const AngleEstimate e1 = angle_sum(s1, opt.samples, s1_stream);
        const AngleEstimate e2 = angle_sum(s2, opt.samples, s2_stream);
        g1.push_back(e1);
        g2.push_back(e2);
        const std::string suffix = "(t=" + format_label(t) + ")";
        r.results.push_back(ResultRecord::make_estimate("gamma_s1" + suffix, e1));
        r.results.push_back(ResultRecord::make_scalar("cond_s1" + suffix, worst_condition(s1)));
        r.results.push_back(ResultRecord::make_estimate("gamma_s2" + suffix, e2));
        r.results.push_back(ResultRecord::make_scalar("cond_s2" + suffix, worst_condition(s2)));
    }

    // at t = 0 the two families are the same simplex
    if (opt.t_grid.front() == 0.0)
        r.results.push_back(ResultRecord::make_comparison(
            "s1_vs_s2_at_t0", compare(g1.front(), g2.front(), "gamma_s1(t=0)", "gamma_s2(t=0)")));

    bool in_bounds = true;
    for (const auto& e : g1) in_bounds &= e.value > 0.0 && e.value < 0.5 + 4.0 * e.std_error;
    for (const auto& e : g2) in_bounds &= e.value > 0.0 && e.value < 0.5 + 4.0 * e.std_error;
    r.results.push_back(ResultRecord::make_check("angle_sums_in_bounds", in_bounds,
                                                 "every estimate in (0, 1/2 + 4 SE)"));

    auto trend = [](const std::vector<AngleEstimate>& g, bool decreasing) {
        for (std::size_t i = 1; i < g.size(); ++i) {
            const double step = g[i].value - g[i - 1].value;
            const double slack =
                4.0 * std::sqrt(g[i].std_error * g[i].std_error +
                                g[i - 1].std_error * g[i - 1].std_error);
            if (decreasing ? step > slack : step < -slack) return false;
        }
        return true;
    };
    r.results.push_back(ResultRecord::make_check("s1_trend_decreasing", trend(g1, true)));
    r.results.push_back(ResultRecord::make_check("s2_trend_increasing", trend(g2, false)));

    r.verdict = recompute_verdict(r);
    r.wall_time_s = timer.seconds();
    return r;
}

ExperimentReport cmd_freeze(const FreezeOptions& opt) {
    Stopwatch timer;
    if (opt.dim < 2) throw std::invalid_argument("freeze: need d >= 2");
    if (opt.n_grid.empty()) throw std::invalid_argument("freeze: empty n grid");
    if (opt.replicates < 2) throw std::invalid_argument("freeze: need at least 2 replicates");
    for (std::size_t i = 0; i < opt.n_grid.size(); ++i) {
        if (opt.n_grid[i] < std::size_t(opt.dim))
            throw std::invalid_argument("freeze: every n must be >= d");
        if (i > 0 && opt.n_grid[i] <= opt.n_grid[i - 1])
            throw std::invalid_argument("freeze: n grid must be strictly increasing");
    }
    const int d = opt.dim;

    ExperimentReport r;
    r.experiment = "freeze";
    r.dimension = d;
    std::string grid;
    for (std::size_t n : opt.n_grid) grid += (grid.empty() ? "" : ",") + std::to_string(n);
    add_param(r, "n_grid", grid);
    add_param(r, "replicates", format_param(opt.replicates));
    add_param(r, "n_angle", format_param(opt.n_angle));
    add_param(r, "seed", format_param(opt.seed));
    add_param(r, "stream", format_param(opt.stream));

    std::vector<double> mean_dev(opt.n_grid.size());
    std::vector<AngleEstimate> mean_angle(opt.n_grid.size());
    for (std::size_t ni = 0; ni < opt.n_grid.size(); ++ni) {
        const std::size_t n = opt.n_grid[ni];
        double dev_sum = 0.0, a_sum = 0.0, a_sumsq = 0.0;
        for (std::size_t rep = 0; rep < opt.replicates; ++rep) {
            RandomStream stream(opt.seed, opt.stream + 1 + ni * opt.replicates + rep);
            const GramMatrix g = lifted_difference_gram(d, n, stream);
            const GramMatrix c = correlation(g);
            double dev = 0.0;
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) dev += std::abs(c(i, j) - 0.5);
            dev_sum += dev / (d * (d - 1) / 2.0);
            const double a = estimate_orthant(g, opt.n_angle, stream).value;
            a_sum += a;
            a_sumsq += a * a;
        }
        const double reps = double(opt.replicates);
        mean_dev[ni] = dev_sum / reps;
        const double mean = a_sum / reps;
        const double sd = std::sqrt(std::max(a_sumsq / reps - mean * mean, 0.0) / (reps - 1.0));
        mean_angle[ni] = {mean, sd, opt.replicates, Method::orthant, opt.seed};

        const std::string suffix = "(n=" + std::to_string(n) + ")";
        r.results.push_back(ResultRecord::make_scalar("mean_corr_deviation" + suffix, mean_dev[ni]));
        r.results.push_back(ResultRecord::make_estimate("mean_lifted_angle" + suffix, mean_angle[ni]));
    }

    AngleEstimate reference;
    if (d <= 3) {
        reference = {exact_regular_angle(d), 0.0, 0, Method::exact, opt.seed};
    } else {
        RandomStream ref_stream(opt.seed, opt.stream);
        reference = estimate_orthant(regular_gram(d), 10 * opt.n_angle, ref_stream);
    }
    r.results.push_back(ResultRecord::make_estimate("alpha_regular_reference", reference));

    bool decreasing = true;
    for (std::size_t i = 1; i < mean_dev.size(); ++i) decreasing &= mean_dev[i] < mean_dev[i - 1];
    r.results.push_back(ResultRecord::make_check("deviation_strictly_decreasing", decreasing));

    for (std::size_t i = 0; i < mean_angle.size(); ++i)
        for (std::size_t j = i + 1; j < mean_angle.size(); ++j)
            r.results.push_back(ResultRecord::make_comparison(
                "angle_n" + std::to_string(opt.n_grid[i]) + "_vs_n" + std::to_string(opt.n_grid[j]),
                compare(mean_angle[i], mean_angle[j])));
    r.results.push_back(ResultRecord::make_comparison(
        "largest_n_vs_regular", compare(mean_angle.back(), reference, "mean_lifted_angle",
                                        "alpha_regular_reference")));

    r.verdict = recompute_verdict(r);
    r.wall_time_s = timer.seconds();
    return r;
}

ExperimentReport cmd_regions(const RegionsOptions& opt) {
    Stopwatch timer;
    if (opt.dim < 2 || opt.dim > 5) throw std::invalid_argument("regions: need 2 <= d <= 5");
    const int d = opt.dim;

    ExperimentReport r;
    r.experiment = "regions";
    r.dimension = d;
    add_param(r, "n_per_region", format_param(opt.n_per_region));
    add_param(r, "n_angle", format_param(opt.n_angle));
    add_param(r, "seed", format_param(opt.seed));
    add_param(r, "stream", format_param(opt.stream));

    RandomStream simplex_stream(opt.seed, opt.stream + 1);
    RandomStream census_stream(opt.seed, opt.stream + 2);
    RandomStream angle_stream(opt.seed, opt.stream + 3);

    const Simplex s = gaussian_simplex(d, simplex_stream);
    RegionCensus census;
    try {
        census = region_census(s, opt.n_per_region, census_stream);
    } catch (const GeneralPositionViolation& e) {
        // Serialize the offending simplex for inspection.
        std::string vs;
        for (const Vector& v : s.vertices()) {
            vs += vs.empty() ? "[" : ",[";
            for (std::size_t c = 0; c < v.size(); ++c)
                vs += (c ? "," : "") + format_real(v[c]);
            vs += "]";
        }
        throw GeneralPositionViolation(std::string(e.what()) + "; simplex vertices: " + vs);
    }

    const std::uint32_t cap = RegionCensus::expected_count(d);
    r.results.push_back(ResultRecord::make_scalar("region_count", double(census.regions.size())));
    r.results.push_back(ResultRecord::make_scalar("region_count_expected", double(cap)));
    r.results.push_back(ResultRecord::make_check(
        "region_count_exact", census.regions.size() == cap,
        std::to_string(census.regions.size()) + " of " + std::to_string(cap)));

    for (const Region& region : census.regions)
        r.results.push_back(ResultRecord::make_estimate(
            "region_" + pattern_string(region.pattern, d + 1), region.angle));

    const double fsum = census.frequency_sum();
    r.results.push_back(ResultRecord::make_scalar("frequency_sum", fsum));
    r.results.push_back(ResultRecord::make_check("frequency_sum_exact", fsum == 1.0));

    std::size_t internal = 0;
    for (const Region& region : census.regions)
        if (is_single_minus(region.pattern, d + 1)) ++internal;
    r.results.push_back(ResultRecord::make_check("internal_cones_present", internal == std::size_t(d) + 1,
                                                 std::to_string(internal) + " single-minus cells"));

    // Reconstructed angle sum: mass of the internal-cone cells.
    const double gm = census.single_minus_mass();
    const double gs = 0.5 * (gm + census.single_plus_mass());
    const AngleEstimate gamma_census{gm, binomial_std_error(gm, census.n_samples),
                                     census.n_samples, Method::membership, opt.seed};
    r.results.push_back(ResultRecord::make_estimate("gamma_census", gamma_census));
    r.results.push_back(ResultRecord::make_scalar("gamma_census_symmetrized", gs));

    const AngleEstimate gamma_direct = angle_sum(s, opt.n_angle, angle_stream);
    r.results.push_back(ResultRecord::make_estimate("gamma_angle_sum", gamma_direct));
    r.results.push_back(ResultRecord::make_comparison(
        "gamma_census_vs_angle_sum", compare(gamma_census, gamma_direct, "gamma_census",
                                             "gamma_angle_sum")));

    r.verdict = recompute_verdict(r);
    r.wall_time_s = timer.seconds();
    return r;
}

} // namespace solidangle
