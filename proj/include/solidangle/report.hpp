#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "solidangle/estimate.hpp"

namespace solidangle {

/// One labeled entry of a report: an estimate, a comparison, a plain scalar,
/// or a boolean check.
struct ResultRecord {
    enum class Kind { estimate, comparison, scalar, check };

    Kind kind = Kind::scalar;
    std::string label;
    std::optional<AngleEstimate> estimate;
    std::optional<ComparisonVerdict> comparison;
    std::optional<double> value;
    std::optional<bool> pass;
    std::string note;

    static ResultRecord make_estimate(std::string label, AngleEstimate e);
    static ResultRecord make_comparison(std::string label, ComparisonVerdict v);
    static ResultRecord make_scalar(std::string label, double value);
    static ResultRecord make_check(std::string label, bool pass, std::string note = "");
};

/// Structured output of one experiment run. Serializes to JSON (reals as
/// decimal strings with 17 significant digits, so parsing is lossless and
/// replays are byte-comparable) or to a flat CSV for plotting.
struct ExperimentReport {
    std::string experiment;
    int dimension = 0;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<ResultRecord> results;
    bool verdict = false;
    int shards = 1;
    double wall_time_s = 0.0;
};

/// The verdict is a pure function of the results: every comparison must pass
/// the recomputed 4-sigma test and every check record must hold.
bool recompute_verdict(const ExperimentReport& r);

/// include_wall_time=false yields the canonical form used for replay
/// comparison (wall time is the only nondeterministic field).
std::string to_json(const ExperimentReport& r, bool include_wall_time = true);
ExperimentReport report_from_json(std::string_view text);

/// Flat export: experiment, d, label, value, std_error, n.
std::string to_csv(const ExperimentReport& r);

/// %.17g -- round-trips doubles exactly.
std::string format_real(double x);

} // namespace solidangle
