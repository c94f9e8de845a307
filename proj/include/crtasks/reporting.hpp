#pragma once
#include <map>
#include <string>
#include <vector>

#include "crtasks/conformance.hpp"
#include "crtasks/shapes.hpp"
#include "crtasks/version.hpp"

namespace crtasks {

struct StageOutcome {
    std::string name;
    bool passed = false;
    std::string message;
};

struct PerFileResult {
    std::string file;
    bool json_valid = false;
    bool shacl_conforms = false;
    int iterations = 1;
};

struct ValidationReport {
    std::string version;
    std::string run_date;  // ISO-8601, always injected by the caller
    std::map<std::string, std::string> parameters;
    std::vector<StageOutcome> stages;
    std::vector<PerFileResult> per_file;
    size_t pass = 0;
    size_t fail = 0;
    bool overall_passed = false;
    int iterations = 1;
    std::vector<std::string> output_files;
};

// per_file entries derive one-to-one from verdicts; pass + fail always equals
// the verdict count; overall_passed iff every stage passed and fail == 0.
inline ValidationReport build_report(const std::vector<FileVerdict>& verdicts,
                                     std::map<std::string, std::string> parameters,
                                     std::vector<StageOutcome> stages, std::string run_date,
                                     int iterations = 1) {
    ValidationReport report;
    report.version = kVersion;
    report.run_date = std::move(run_date);
    report.parameters = std::move(parameters);
    report.stages = std::move(stages);
    report.iterations = iterations;
    for (const auto& v : verdicts) {
        report.per_file.push_back({v.source_name, v.json_valid, v.conforms, iterations});
        if (v.pass())
            ++report.pass;
        else
            ++report.fail;
    }
    bool stages_ok = true;
    for (const auto& s : report.stages) stages_ok = stages_ok && s.passed;
    report.overall_passed = stages_ok && report.fail == 0;
    return report;
}

// Top-level key order is fixed: version, run_date, parameters, stages,
// per_file, results, overall_passed, iterations, output_files.
inline std::string render_report_json(const ValidationReport& report) {
    json j;
    j["version"] = report.version;
    j["run_date"] = report.run_date;
    json params = json::object();
    for (const auto& [k, v] : report.parameters) params[k] = v;
    j["parameters"] = std::move(params);
    json stages = json::array();
    for (const auto& s : report.stages) {
        json stage;
        stage["name"] = s.name;
        stage["passed"] = s.passed;
        stage["message"] = s.message;
        stages.push_back(std::move(stage));
    }
    j["stages"] = std::move(stages);
    json per_file = json::array();
    for (const auto& f : report.per_file) {
        json entry;
        entry["file"] = f.file;
        entry["json_valid"] = f.json_valid;
        entry["shacl_conforms"] = f.shacl_conforms;
        entry["iterations"] = f.iterations;
        per_file.push_back(std::move(entry));
    }
    j["per_file"] = std::move(per_file);
    json results;
    results["pass"] = report.pass;
    results["fail"] = report.fail;
    j["results"] = std::move(results);
    j["overall_passed"] = report.overall_passed;
    j["iterations"] = report.iterations;
    j["output_files"] = report.output_files;
    return j.dump(2) + "\n";
}

namespace detail {

inline std::string render_value_list(const std::vector<Value>& values) {
    std::string out;
    for (const auto& v : values) {
        if (!out.empty()) out += ", ";
        if (v.is_ref())
            out += v.ref;
        else if (v.is_text())
            out += v.text();
        else
            out += v.literal.dump();
    }
    return out;
}

}  // namespace detail

// Plain-text run summary: one PASS/FAIL line per file with violation counts
// by constraint code, then linkage, coverage, and fulfillment when a match
// report is present.
inline std::string render_summary(const std::vector<FileVerdict>& verdicts,
                                  const MatchReport* match = nullptr) {
    std::string out;
    for (const auto& v : verdicts) {
        out += v.source_name + ": " + (v.pass() ? "PASS" : "FAIL") + "\n";
        std::map<std::string, size_t> by_code;
        for (const auto& d : v.diagnostics)
            if (d.severity == Severity::kViolation) ++by_code[d.code];
        for (const auto& [code, n] : by_code)
            out += "  " + code + " x" + std::to_string(n) + "\n";
    }
    if (!match) return out;

    out += "match:\n";
    out += std::string("  linked: ") + (match->linked ? "true" : "false") + "\n";
    for (const auto& [sol, prob] : match->subtask_pairs)
        out += "  subtask " + sol + " -> " + prob + "\n";
    for (const auto& id : match->unmatched_problem_subtasks)
        out += "  uncovered problem subtask: " + id + "\n";
    for (const auto& id : match->unmatched_solution_subtasks)
        out += "  unmatched solution subtask: " + id + "\n";
    for (const auto& scope : match->coverage) {
        out += "  metric " + scope.metric + " at " + scope.problem_scope + ": ";
        if (scope.satisfied) {
            out += "satisfied";
            if (!scope.observed.empty())
                out += " (" + detail::render_value_list(scope.observed) + ")";
        } else {
            out += "MISSING";
        }
        out += "\n";
    }
    for (const auto& d : match->record_diagnostics)
        out += "  " + std::string(severity_name(d.severity)) + " " + d.code + " " + d.focus +
               (d.property.empty() ? "" : " " + d.property) + ": " + d.message + "\n";
    out += std::string("  fulfilled: ") + (match->fulfilled ? "true" : "false") + "\n";
    return out;
}

}  // namespace crtasks
