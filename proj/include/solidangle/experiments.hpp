#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solidangle/report.hpp"

namespace solidangle {

// Every command is a pure function of its options: sub-estimates draw from
// streams (seed, stream + fixed offset), so a replay with identical options
// reproduces identical result values.

struct AngleOptions {
    std::string cone_input;            // generator matrix file, or "gram:d:rho"
    std::vector<std::string> methods;  // membership | orthant | crofton | exact
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 42;
    std::uint64_t stream = 0;
};

struct VerifyMainOptions {
    int dim = 3;
    std::size_t samples = 1'000'000; // hull and orthant estimators
    std::size_t n_simplices = 200;   // direct average (d <= 3 only)
    std::size_t n_angle = 10'000;    // per-vertex budget of the direct average
    std::uint64_t seed = 42;
    std::uint64_t stream = 0;
};

struct BoundsOptions {
    int dim = 3;
    std::vector<double> t_grid = {0.0, 0.25, 0.5, 0.75, 0.9, 0.99};
    std::size_t samples = 200'000;
    std::uint64_t seed = 42;
    std::uint64_t stream = 0;
};

struct FreezeOptions {
    int dim = 3;
    std::vector<std::size_t> n_grid = {10, 100, 1000, 10000};
    std::size_t replicates = 100;
    std::size_t n_angle = 10'000;
    std::uint64_t seed = 42;
    std::uint64_t stream = 0;
};

struct RegionsOptions {
    int dim = 3;
    std::size_t n_per_region = 4096;
    std::size_t n_angle = 100'000; // angle_sum cross-check budget
    std::uint64_t seed = 42;
    std::uint64_t stream = 0;
};

/// One or more estimates of a single cone's solid angle; with two or more
/// methods the report carries all pairwise comparisons.
ExperimentReport cmd_angle(const AngleOptions& opt);

/// The main identity: the expected vertex angle of the Gaussian simplex
/// (hull estimator) against the regular simplex vertex angle (orthant
/// estimator of the regular Gram), plus, for d <= 3, a direct average of
/// Gaussian-simplex angle sums. Verdict: all pairwise 4-sigma comparisons.
ExperimentReport cmd_verify_main(const VerifyMainOptions& opt);

/// Angle-sum sweep along the flattening and spreading families. Verdict:
/// every estimate inside (0, 1/2 + 4 SE), decreasing trend for the first
/// family, increasing for the second.
ExperimentReport cmd_bounds(const BoundsOptions& opt);

/// Lifted-simplex freezing: per lift dimension n, the mean correlation
/// deviation from 1/2 and the mean lifted-Gram angle over replicates.
/// Verdict: deviations strictly decreasing, per-n mean angles mutually
/// compatible, largest-n mean within 4 SE of the regular value.
ExperimentReport cmd_freeze(const FreezeOptions& opt);

/// Region census of a random Gaussian simplex: exact cell count, exact-sum
/// frequencies, and the angle sum reconstructed from the internal-cone cells
/// against the direct estimate.
ExperimentReport cmd_regions(const RegionsOptions& opt);

} // namespace solidangle
