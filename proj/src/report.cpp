#include "solidangle/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace solidangle {

using ordered_json = nlohmann::ordered_json;

ResultRecord ResultRecord::make_estimate(std::string label, AngleEstimate e) {
    ResultRecord r;
    r.kind = Kind::estimate;
    r.label = std::move(label);
    r.estimate = e;
    return r;
}

ResultRecord ResultRecord::make_comparison(std::string label, ComparisonVerdict v) {
    ResultRecord r;
    r.kind = Kind::comparison;
    r.label = std::move(label);
    r.comparison = std::move(v);
    return r;
}

ResultRecord ResultRecord::make_scalar(std::string label, double value) {
    ResultRecord r;
    r.kind = Kind::scalar;
    r.label = std::move(label);
    r.value = value;
    return r;
}

ResultRecord ResultRecord::make_check(std::string label, bool pass, std::string note) {
    ResultRecord r;
    r.kind = Kind::check;
    r.label = std::move(label);
    r.pass = pass;
    r.note = std::move(note);
    return r;
}

bool recompute_verdict(const ExperimentReport& r) {
    for (const ResultRecord& rec : r.results) {
        switch (rec.kind) {
            case ResultRecord::Kind::comparison: {
                const ComparisonVerdict& c = *rec.comparison;
                const double z = c.combined_se > 0.0
                                     ? c.diff / c.combined_se
                                     : (c.diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
                if (!(z <= 4.0)) return false;
                break;
            }
            case ResultRecord::Kind::check:
                if (!rec.pass.value_or(false)) return false;
                break;
            default:
                break;
        }
    }
    return true;
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

double parse_real(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw std::invalid_argument("report: bad real value '" + s + "'");
    return v;
}

ordered_json record_to_json(const ResultRecord& rec) {
    ordered_json j;
    switch (rec.kind) {
        case ResultRecord::Kind::estimate: {
            const AngleEstimate& e = *rec.estimate;
            j["kind"] = "estimate";
            j["label"] = rec.label;
            j["value"] = format_real(e.value);
            j["std_error"] = format_real(e.std_error);
            j["n_samples"] = e.n_samples;
            j["method"] = method_name(e.method);
            j["seed"] = e.seed;
            break;
        }
        case ResultRecord::Kind::comparison: {
            const ComparisonVerdict& c = *rec.comparison;
            j["kind"] = "comparison";
            j["label"] = rec.label;
            j["a"] = c.label_a;
            j["b"] = c.label_b;
            j["diff"] = format_real(c.diff);
            j["combined_se"] = format_real(c.combined_se);
            j["z"] = format_real(c.z);
            j["pass"] = c.pass;
            break;
        }
        case ResultRecord::Kind::scalar:
            j["kind"] = "scalar";
            j["label"] = rec.label;
            j["value"] = format_real(*rec.value);
            break;
        case ResultRecord::Kind::check:
            j["kind"] = "check";
            j["label"] = rec.label;
            j["pass"] = *rec.pass;
            if (!rec.note.empty()) j["note"] = rec.note;
            break;
    }
    return j;
}

ResultRecord record_from_json(const ordered_json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    ResultRecord rec;
    rec.label = j.at("label").get<std::string>();
    if (kind == "estimate") {
        rec.kind = ResultRecord::Kind::estimate;
        AngleEstimate e;
        e.value = parse_real(j.at("value").get<std::string>());
        e.std_error = parse_real(j.at("std_error").get<std::string>());
        e.n_samples = j.at("n_samples").get<std::uint64_t>();
        e.method = method_from_name(j.at("method").get<std::string>());
        e.seed = j.at("seed").get<std::uint64_t>();
        rec.estimate = e;
    } else if (kind == "comparison") {
        rec.kind = ResultRecord::Kind::comparison;
        ComparisonVerdict c;
        c.label_a = j.at("a").get<std::string>();
        c.label_b = j.at("b").get<std::string>();
        c.diff = parse_real(j.at("diff").get<std::string>());
        c.combined_se = parse_real(j.at("combined_se").get<std::string>());
        c.z = parse_real(j.at("z").get<std::string>());
        c.pass = j.at("pass").get<bool>();
        rec.comparison = std::move(c);
    } else if (kind == "scalar") {
        rec.kind = ResultRecord::Kind::scalar;
        rec.value = parse_real(j.at("value").get<std::string>());
    } else if (kind == "check") {
        rec.kind = ResultRecord::Kind::check;
        rec.pass = j.at("pass").get<bool>();
        if (j.contains("note")) rec.note = j.at("note").get<std::string>();
    } else {
        throw std::invalid_argument("report: unknown record kind '" + kind + "'");
    }
    return rec;
}

} // namespace

std::string to_json(const ExperimentReport& r, bool include_wall_time) {
    ordered_json j;
    j["experiment"] = r.experiment;
    j["dimension"] = r.dimension;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    j["parameters"] = std::move(params);
    ordered_json results = ordered_json::array();
    for (const ResultRecord& rec : r.results) results.push_back(record_to_json(rec));
    j["results"] = std::move(results);
    j["verdict"] = r.verdict ? "pass" : "fail";
    j["shards"] = r.shards;
    if (include_wall_time) j["wall_time_s"] = format_real(r.wall_time_s);
    return j.dump(2) + "\n";
}

ExperimentReport report_from_json(std::string_view text) {
    const ordered_json j = ordered_json::parse(text);
    ExperimentReport r;
    r.experiment = j.at("experiment").get<std::string>();
    r.dimension = j.at("dimension").get<int>();
    for (const auto& [k, v] : j.at("parameters").items())
        r.parameters.emplace_back(k, v.get<std::string>());
    for (const auto& rec : j.at("results")) r.results.push_back(record_from_json(rec));
    r.verdict = j.at("verdict").get<std::string>() == "pass";
    r.shards = j.at("shards").get<int>();
    if (j.contains("wall_time_s")) r.wall_time_s = parse_real(j.at("wall_time_s").get<std::string>());
    return r;
}

std::string to_csv(const ExperimentReport& r) {
    std::string out = "experiment,d,label,value,std_error,n\n";
    for (const ResultRecord& rec : r.results) {
        if (rec.kind == ResultRecord::Kind::estimate) {
            const AngleEstimate& e = *rec.estimate;
            out += r.experiment + "," + std::to_string(r.dimension) + "," + rec.label + "," +
                   format_real(e.value) + "," + format_real(e.std_error) + "," +
                   std::to_string(e.n_samples) + "\n";
        } else if (rec.kind == ResultRecord::Kind::scalar) {
            out += r.experiment + "," + std::to_string(r.dimension) + "," + rec.label + "," +
                   format_real(*rec.value) + ",,\n";
        }
    }
    return out;
}

} // namespace solidangle
