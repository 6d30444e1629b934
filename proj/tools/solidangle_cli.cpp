// Experiment runner. Every subcommand prints one structured JSON report (or a
// flat CSV with --format csv) and exits 0 only when the report verdict is
// pass. Replaying a command with the same seed/stream yields identical result
// values; wall_time_s is the only field that moves.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "solidangle/errors.hpp"
#include "solidangle/experiments.hpp"
#include "solidangle/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDegenerateInput = 2;
constexpr int kExitNumericalDegeneracy = 3;
constexpr int kExitFailVerdict = 4;

struct OutputOptions {
    std::string path; // empty: stdout
    std::string format = "json";
};

int emit(const solidangle::ExperimentReport& report, const OutputOptions& out) {
    const std::string text =
        out.format == "csv" ? solidangle::to_csv(report) : solidangle::to_json(report);
    if (out.path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out.path);
        if (!f) {
            std::cerr << "error: cannot write to '" << out.path << "'\n";
            return kExitUsage;
        }
        f << text;
    }
    return report.verdict ? kExitPass : kExitFailVerdict;
}

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--out", out.path, "Write the report to this path instead of stdout");
    cmd->add_option("--format", out.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

std::vector<double> parse_real_list(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
    return values;
}

std::vector<std::size_t> parse_count_list(const std::string& csv) {
    std::vector<std::size_t> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stoull(item));
    return values;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solid angles of simplicial cones and angle sums of random simplices"};
    app.require_subcommand(1);

    solidangle::AngleOptions angle_opt;
    std::string angle_methods = "orthant";
    OutputOptions angle_out;
    CLI::App* angle = app.add_subcommand(
        "angle", "Estimate the solid angle of one cone (exit 4 on a failed comparison verdict)");
    angle->add_option("input", angle_opt.cone_input,
                      "Generator matrix file (one generator per row) or gram:d:rho")
        ->required();
    angle->add_option("--method", angle_methods,
                      "Comma list of membership|orthant|crofton|exact; two or more "
                      "methods add pairwise comparisons")
        ->capture_default_str();
    angle->add_option("--samples", angle_opt.samples)->capture_default_str();
    angle->add_option("--seed", angle_opt.seed)->capture_default_str();
    angle->add_option("--stream", angle_opt.stream)->capture_default_str();
    add_output_flags(angle, angle_out);

    solidangle::VerifyMainOptions verify_opt;
    OutputOptions verify_out;
    CLI::App* verify = app.add_subcommand(
        "verify-main", "Expected Gaussian-simplex angle sum vs the regular simplex");
    verify->add_option("--dim", verify_opt.dim)->capture_default_str();
    verify->add_option("--samples", verify_opt.samples)->capture_default_str();
    verify->add_option("--n-simplices", verify_opt.n_simplices)->capture_default_str();
    verify->add_option("--n-angle", verify_opt.n_angle)->capture_default_str();
    verify->add_option("--seed", verify_opt.seed)->capture_default_str();
    verify->add_option("--stream", verify_opt.stream)->capture_default_str();
    add_output_flags(verify, verify_out);

    solidangle::BoundsOptions bounds_opt;
    std::string bounds_grid = "0,0.25,0.5,0.75,0.9,0.99";
    OutputOptions bounds_out;
    CLI::App* bounds = app.add_subcommand(
        "bounds", "Angle-sum sweep along the flattening/spreading simplex families");
    bounds->add_option("--dim", bounds_opt.dim)->capture_default_str();
    bounds->add_option("--t-grid", bounds_grid, "Comma list of t values in [0, 0.995]")
        ->capture_default_str();
    bounds->add_option("--samples", bounds_opt.samples)->capture_default_str();
    bounds->add_option("--seed", bounds_opt.seed)->capture_default_str();
    bounds->add_option("--stream", bounds_opt.stream)->capture_default_str();
    add_output_flags(bounds, bounds_out);

    solidangle::FreezeOptions freeze_opt;
    std::string freeze_grid = "10,100,1000,10000";
    OutputOptions freeze_out;
    CLI::App* freeze = app.add_subcommand(
        "freeze", "Lifted Gaussian simplices: correlation freezing and angle stability");
    freeze->add_option("--dim", freeze_opt.dim)->capture_default_str();
    freeze->add_option("--n-grid", freeze_grid, "Comma list of lift dimensions (each >= d)")
        ->capture_default_str();
    freeze->add_option("--replicates", freeze_opt.replicates)->capture_default_str();
    freeze->add_option("--n-angle", freeze_opt.n_angle)->capture_default_str();
    freeze->add_option("--seed", freeze_opt.seed)->capture_default_str();
    freeze->add_option("--stream", freeze_opt.stream)->capture_default_str();
    add_output_flags(freeze, freeze_out);

    solidangle::RegionsOptions regions_opt;
    OutputOptions regions_out;
    CLI::App* regions = app.add_subcommand(
        "regions", "Facet-hyperplane region census of a random Gaussian simplex");
    regions->add_option("--dim", regions_opt.dim)->capture_default_str();
    regions->add_option("--samples", regions_opt.n_per_region, "Census samples per region")
        ->capture_default_str();
    regions->add_option("--n-angle", regions_opt.n_angle)->capture_default_str();
    regions->add_option("--seed", regions_opt.seed)->capture_default_str();
    regions->add_option("--stream", regions_opt.stream)->capture_default_str();
    add_output_flags(regions, regions_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*angle) {
            std::stringstream ss(angle_methods);
            std::string m;
            angle_opt.methods.clear();
            while (std::getline(ss, m, ',')) angle_opt.methods.push_back(m);
            return emit(solidangle::cmd_angle(angle_opt), angle_out);
        }
        if (*verify) return emit(solidangle::cmd_verify_main(verify_opt), verify_out);
        if (*bounds) {
            bounds_opt.t_grid = parse_real_list(bounds_grid);
            return emit(solidangle::cmd_bounds(bounds_opt), bounds_out);
        }
        if (*freeze) {
            freeze_opt.n_grid = parse_count_list(freeze_grid);
            return emit(solidangle::cmd_freeze(freeze_opt), freeze_out);
        }
        if (*regions) return emit(solidangle::cmd_regions(regions_opt), regions_out);
    } catch (const solidangle::DegenerateCone& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kExitDegenerateInput;
    } catch (const solidangle::NotPositiveDefinite& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kExitDegenerateInput;
    } catch (const solidangle::Singular& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kExitDegenerateInput;
    } catch (const solidangle::GeneralPositionViolation& e) {
        std::cerr << "numerical degeneracy: " << e.what() << "\n";
        return kExitNumericalDegeneracy;
    } catch (const solidangle::NumericalInstability& e) {
        std::cerr << "numerical degeneracy: " << e.what() << "\n";
        return kExitNumericalDegeneracy;
    } catch (const solidangle::DegenerateProjection& e) {
        std::cerr << "numerical degeneracy: " << e.what() << "\n";
        return kExitNumericalDegeneracy;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
