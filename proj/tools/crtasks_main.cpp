#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "crtasks/conformance.hpp"
#include "crtasks/graph.hpp"
#include "crtasks/ontology.hpp"
#include "crtasks/reporting.hpp"
#include "crtasks/shapes.hpp"
#include "crtasks/version.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct Expectation {
    std::string metric;
    double value = 0.0;
    double tolerance = 0.0;
};

// Infrastructure failure (unreadable path, bad flags, bad ontology): exit 2.
struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError("cannot write " + path);
    out << content;
    if (!out) throw CliError("cannot write " + path);
}

std::string now_utc_iso8601() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

crtasks::Ontology load_ontology(const std::string& path) {
    if (path.empty()) return crtasks::builtin_ontology();
    std::string text = read_file(path);
    try {
        return crtasks::parse_ontology(text);
    } catch (const std::exception& e) {
        throw CliError("ontology " + path + ": " + e.what());
    }
}

// Malformed target documents become FAIL verdicts, never infrastructure
// errors; the X-codes distinguish syntax (X0, json_valid=false) from
// JSON-LD structure faults (valid JSON that cannot become a graph).
crtasks::FileVerdict error_verdict(const std::string& name, const crtasks::ExpandError& e) {
    crtasks::FileVerdict v;
    v.source_name = name;
    v.conforms = false;
    std::string code;
    std::string message;
    switch (e.kind) {
        case crtasks::ExpandError::Kind::kJsonSyntax:
            v.json_valid = false;
            code = "X0";
            message = std::string("JSON parse error: ") + e.what();
            break;
        case crtasks::ExpandError::Kind::kTypeConflict:
            code = "X3";
            message = e.what();
            break;
        case crtasks::ExpandError::Kind::kBadRoot:
            code = "X4";
            message = e.what();
            break;
        default:  // kBadContext, kBadTerm
            code = "X1";
            message = e.what();
            break;
    }
    v.diagnostics.push_back(
        {code, name, "", crtasks::Severity::kViolation, std::move(message)});
    return v;
}

struct ValidatedFile {
    crtasks::FileVerdict verdict;
    std::optional<crtasks::NodeGraph> graph;  // absent when expansion failed
};

ValidatedFile validate_file(const std::string& text, const std::string& name,
                            const crtasks::Ontology& ont) {
    ValidatedFile out;
    try {
        crtasks::NodeGraph graph = crtasks::expand_document(text, name);
        out.verdict = crtasks::validate_graph(graph, ont);
        out.graph = std::move(graph);
    } catch (const crtasks::ExpandError& e) {
        out.verdict = error_verdict(name, e);
    }
    return out;
}

// Bounded worker pool; results land by index so presentation follows input
// order regardless of completion order.
template <typename F>
void parallel_for(size_t n, F f) {
    size_t hw = std::thread::hardware_concurrency();
    size_t workers = std::min({n, size_t{8}, hw == 0 ? size_t{1} : hw});
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n) return;
                f(i);
            }
        });
    for (auto& t : pool) t.join();
}

std::vector<ValidatedFile> validate_all(const std::vector<std::string>& paths,
                                        const crtasks::Ontology& ont) {
    std::vector<std::string> texts;
    texts.reserve(paths.size());
    for (const auto& p : paths) texts.push_back(read_file(p));
    std::vector<ValidatedFile> out(paths.size());
    parallel_for(paths.size(),
                 [&](size_t i) { out[i] = validate_file(texts[i], paths[i], ont); });
    return out;
}

crtasks::json verdict_json(const crtasks::FileVerdict& v) {
    crtasks::json j;
    j["file"] = v.source_name;
    j["json_valid"] = v.json_valid;
    j["conforms"] = v.conforms;
    crtasks::json diags = crtasks::json::array();
    for (const auto& d : v.diagnostics) {
        crtasks::json dj;
        dj["severity"] = crtasks::severity_name(d.severity);
        dj["code"] = d.code;
        dj["focus"] = d.focus;
        dj["property"] = d.property;
        dj["message"] = d.message;
        diags.push_back(std::move(dj));
    }
    j["diagnostics"] = std::move(diags);
    return j;
}

void print_verdicts(const std::vector<ValidatedFile>& files, const std::string& format) {
    if (format == "json") {
        crtasks::json arr = crtasks::json::array();
        for (const auto& f : files) arr.push_back(verdict_json(f.verdict));
        std::cout << arr.dump(2) << "\n";
        return;
    }
    for (const auto& f : files) {
        std::cout << "== " << f.verdict.source_name << " ==\n"
                  << crtasks::render_text(f.verdict);
    }
}

crtasks::ValidationReport make_report(const std::vector<ValidatedFile>& files,
                                      std::map<std::string, std::string> parameters,
                                      const std::string& run_date,
                                      const std::vector<std::string>& output_files) {
    std::vector<crtasks::FileVerdict> verdicts;
    bool all_json = true, all_conform = true;
    for (const auto& f : files) {
        verdicts.push_back(f.verdict);
        all_json = all_json && f.verdict.json_valid;
        all_conform = all_conform && f.verdict.conforms;
    }
    std::vector<crtasks::StageOutcome> stages = {
        {"json_validity", all_json,
         std::to_string(files.size()) + " file(s) checked for well-formed JSON"},
        {"shacl_conformance", all_conform, "shape catalog evaluated against every file"},
    };
    auto report = crtasks::build_report(verdicts, std::move(parameters), std::move(stages),
                                        run_date.empty() ? now_utc_iso8601() : run_date);
    report.output_files = output_files;
    return report;
}

int run_validate(const std::vector<std::string>& inputs, const std::string& ontology_path,
                 const std::string& format, const std::string& report_path,
                 const std::string& run_date, bool report_to_stdout) {
    crtasks::Ontology ont = load_ontology(ontology_path);
    auto files = validate_all(inputs, ont);

    std::map<std::string, std::string> parameters = {
        {"command", report_to_stdout ? "report" : "validate"}, {"format", format}};
    for (size_t i = 0; i < inputs.size(); ++i)
        parameters["input." + std::to_string(i)] = inputs[i];

    bool suppress_listing = report_to_stdout && report_path.empty();
    if (!suppress_listing) print_verdicts(files, format);
    if (!report_path.empty() || report_to_stdout) {
        std::vector<std::string> output_files;
        if (!report_path.empty()) output_files.push_back(report_path);
        auto report = make_report(files, std::move(parameters), run_date, output_files);
        std::string text = crtasks::render_report_json(report);
        if (report_path.empty())
            std::cout << text;
        else
            write_file(report_path, text);
    }
    for (const auto& f : files)
        if (!f.verdict.pass()) return kExitFail;
    return kExitPass;
}

std::optional<double> value_as_number(const crtasks::Value& v) {
    if (v.is_number()) return v.literal.get<double>();
    if (v.is_text()) {
        try {
            size_t used = 0;
            std::string t = v.text();
            double d = std::stod(t, &used);
            if (used == t.size() && !t.empty()) return d;
        } catch (...) {
        }
    }
    return std::nullopt;
}

Expectation parse_expectation(const std::string& raw) {
    auto eq = raw.find('=');
    if (eq == std::string::npos || eq == 0)
        throw CliError("bad --expect '" + raw + "': want metric=value\xC2\xB1tol");
    Expectation e;
    e.metric = crtasks::trim_text(raw.substr(0, eq));
    std::string rest = raw.substr(eq + 1);
    std::string value_str = rest, tol_str;
    if (auto pm = rest.find("\xC2\xB1"); pm != std::string::npos) {
        value_str = rest.substr(0, pm);
        tol_str = rest.substr(pm + 2);
    } else if (auto ascii = rest.find("+-"); ascii != std::string::npos) {
        value_str = rest.substr(0, ascii);
        tol_str = rest.substr(ascii + 2);
    }
    try {
        size_t used = 0;
        e.value = std::stod(value_str, &used);
        if (used != value_str.size()) throw std::invalid_argument(value_str);
        if (!tol_str.empty()) {
            e.tolerance = std::stod(tol_str, &used);
            if (used != tol_str.size()) throw std::invalid_argument(tol_str);
        }
    } catch (const std::exception&) {
        throw CliError("bad --expect '" + raw + "': value and tolerance must be numbers");
    }
    return e;
}

// Root-scope check of one expectation against a match report; returns the
// failure line, or nothing when met.
std::optional<std::string> check_expectation(const crtasks::MatchReport& match,
                                             const Expectation& e, bool lenient) {
    auto same = [&](const std::string& a, const std::string& b) {
        return lenient ? crtasks::fold_metric(a) == crtasks::fold_metric(b) : a == b;
    };
    const crtasks::MetricScope* root_scope = nullptr;
    for (const auto& scope : match.coverage) {
        if (same(scope.metric, e.metric)) {
            root_scope = &scope;
            break;  // coverage lists the root scope first
        }
    }
    if (!root_scope || !root_scope->satisfied)
        return "expectation " + e.metric + ": no reported value";
    double best = 0.0, best_delta = -1.0;
    for (const auto& v : root_scope->observed) {
        auto num = value_as_number(v);
        if (!num) continue;
        double delta = std::abs(*num - e.value);
        if (best_delta < 0 || delta < best_delta) {
            best_delta = delta;
            best = *num;
        }
    }
    if (best_delta < 0) return "expectation " + e.metric + ": reported value is not numeric";
    if (best_delta > e.tolerance) {
        std::ostringstream msg;
        msg << "expectation " << e.metric << "=" << e.value << "\xC2\xB1" << e.tolerance
            << ": reported " << best << " deviates by " << best_delta;
        return msg.str();
    }
    return std::nullopt;
}

int run_match(const std::string& problem_path, const std::vector<std::string>& solution_paths,
              const std::string& ontology_path, const std::string& records_path,
              bool strict, bool lenient_metrics, const std::vector<std::string>& expect_raw) {
    crtasks::Ontology ont = load_ontology(ontology_path);
    std::vector<Expectation> expectations;
    for (const auto& raw : expect_raw) expectations.push_back(parse_expectation(raw));

    std::optional<std::vector<crtasks::json>> records;
    if (!records_path.empty()) {
        try {
            records = crtasks::parse_json_lines(read_file(records_path));
        } catch (const CliError&) {
            throw;
        } catch (const std::exception& e) {
            throw CliError(records_path + ": " + e.what());
        }
    }

    std::vector<std::string> all_paths = {problem_path};
    all_paths.insert(all_paths.end(), solution_paths.begin(), solution_paths.end());
    auto files = validate_all(all_paths, ont);

    std::vector<crtasks::FileVerdict> verdicts;
    for (const auto& f : files) verdicts.push_back(f.verdict);
    std::cout << crtasks::render_summary(verdicts);

    const ValidatedFile& problem = files[0];
    if (!problem.verdict.pass()) {
        std::cout << "problem invalid; match skipped\n";
        return kExitFail;
    }

    crtasks::MatchOptions opts;
    opts.lenient_metrics = lenient_metrics;
    opts.strict = strict;

    bool all_ok = true;
    for (size_t i = 1; i < files.size(); ++i) {
        const ValidatedFile& sol = files[i];
        if (!sol.verdict.pass()) all_ok = false;
        if (!sol.graph) continue;
        auto match = crtasks::match_solution(*problem.graph, *sol.graph, ont, opts,
                                             records ? &*records : nullptr);
        std::cout << "solution " << sol.verdict.source_name << ":\n"
                  << crtasks::render_summary({}, &match);
        if (!match.fulfilled) all_ok = false;
        for (const auto& e : expectations) {
            if (auto failure = check_expectation(match, e, lenient_metrics)) {
                std::cout << "  " << *failure << "\n";
                all_ok = false;
            }
        }
    }
    return all_ok ? kExitPass : kExitFail;
}

int run_inspect(const std::string& input) {
    std::string text = read_file(input);
    crtasks::NodeGraph graph;
    try {
        graph = crtasks::expand_document(text, input);
    } catch (const crtasks::ExpandError& e) {
        throw CliError(input + ": " + e.what());
    }
    std::cout << crtasks::canonical_json(graph);
    std::map<std::string, size_t> census;
    for (const auto& [id, node] : graph.nodes)
        for (const auto& t : node.types) ++census[graph.context.compact(t)];
    std::cout << "census:\n";
    for (const auto& [type, n] : census) std::cout << "  " << type << ": " << n << "\n";
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Croissant Tasks validator and conformance toolkit"};
    app.set_version_flag("--version", crtasks::kVersion);
    app.require_subcommand(1);

    std::string ontology_path, format = "text", report_path, run_date, records_path;
    std::vector<std::string> inputs, expect_raw;
    std::string problem_path, inspect_input;
    std::vector<std::string> solution_paths;
    bool strict = false, lenient_metrics = false;

    auto* validate = app.add_subcommand("validate", "Validate documents against the shapes");
    validate->add_option("inputs", inputs, "JSON-LD files")->required();
    validate->add_option("--ontology", ontology_path, "Turtle ontology file");
    validate->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    validate->add_option("--report", report_path, "Write validation_report.json here");
    validate->add_option("--run-date", run_date, "Timestamp recorded in the report");

    auto* match = app.add_subcommand("match", "Check that solutions fulfill a problem");
    match->add_option("problem", problem_path, "Problem document")->required();
    match->add_option("solutions", solution_paths, "Solution documents")->required();
    match->add_option("--ontology", ontology_path, "Turtle ontology file");
    match->add_option("--records", records_path, "JSON-lines records file");
    match->add_flag("--strict", strict, "Native-typed record values only");
    match->add_flag("--lenient-metrics", lenient_metrics,
                    "Fold case/whitespace in metric names");
    match->add_option("--expect", expect_raw,
                      "metric=value\xC2\xB1tol expectation (repeatable)");

    auto* inspect = app.add_subcommand("inspect", "Print canonical form and type census");
    inspect->add_option("input", inspect_input, "JSON-LD file")->required();

    auto* report = app.add_subcommand("report", "Validate and emit validation_report.json");
    report->add_option("inputs", inputs, "JSON-LD files")->required();
    report->add_option("--ontology", ontology_path, "Turtle ontology file");
    report->add_option("--format", format, "Per-file output format")
        ->check(CLI::IsMember({"text", "json"}));
    report->add_option("--report", report_path, "Report path (default: standard output)");
    report->add_option("--run-date", run_date, "Timestamp recorded in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitError;
    }

    try {
        if (app.got_subcommand(validate))
            return run_validate(inputs, ontology_path, format, report_path, run_date, false);
        if (app.got_subcommand(match))
            return run_match(problem_path, solution_paths, ontology_path, records_path,
                             strict, lenient_metrics, expect_raw);
        if (app.got_subcommand(inspect)) return run_inspect(inspect_input);
        return run_validate(inputs, ontology_path, format, report_path, run_date, true);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
