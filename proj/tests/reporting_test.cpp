#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "crtasks/reporting.hpp"

namespace {

using namespace crtasks;

FileVerdict verdict(std::string name, bool json_valid, bool conforms,
                    std::vector<Diagnostic> diags = {}) {
    FileVerdict v;
    v.source_name = std::move(name);
    v.json_valid = json_valid;
    v.conforms = conforms;
    v.diagnostics = std::move(diags);
    return v;
}

std::vector<StageOutcome> ok_stages() {
    return {{"json_validity", true, "all inputs parsed"},
            {"shacl_conformance", true, "all graphs conform"}};
}

TEST(Report, CountsAndOverallVerdict) {
    std::vector<FileVerdict> verdicts = {
        verdict("a.jsonld", true, true),
        verdict("b.jsonld", true, true),
        verdict("c.jsonld", true, false),
        verdict("d.jsonld", false, false),
    };
    ValidationReport r = build_report(verdicts, {{"command", "validate"}}, ok_stages(),
                                      "2026-01-01T00:00:00Z");
    EXPECT_EQ(r.version, kVersion);
    EXPECT_EQ(r.pass, 2);
    EXPECT_EQ(r.fail, 2);
    ASSERT_EQ(r.per_file.size(), 4u);
    EXPECT_EQ(r.per_file[0].file, "a.jsonld");
    EXPECT_TRUE(r.per_file[0].json_valid);
    EXPECT_TRUE(r.per_file[0].shacl_conforms);
    EXPECT_FALSE(r.per_file[3].json_valid);
    EXPECT_FALSE(r.overall_passed);

    ValidationReport clean = build_report({verdict("a.jsonld", true, true)}, {},
                                          ok_stages(), "2026-01-01T00:00:00Z");
    EXPECT_TRUE(clean.overall_passed);

    auto stages = ok_stages();
    stages[1].passed = false;
    ValidationReport stage_failed = build_report({verdict("a.jsonld", true, true)}, {},
                                                 stages, "2026-01-01T00:00:00Z");
    EXPECT_FALSE(stage_failed.overall_passed);
}

TEST(Report, JsonKeyOrderIsFixed) {
    ValidationReport r = build_report({verdict("a.jsonld", true, true)},
                                      {{"command", "validate"}, {"format", "json"}},
                                      ok_stages(), "2026-01-01T00:00:00Z");
    r.output_files = {"report.json"};
    json parsed = json::parse(render_report_json(r));

    std::vector<std::string> keys;
    for (const auto& [k, v] : parsed.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"version", "run_date", "parameters", "stages",
                                              "per_file", "results", "overall_passed",
                                              "iterations", "output_files"}));

    std::vector<std::string> stage_keys;
    for (const auto& [k, v] : parsed["stages"][0].items()) stage_keys.push_back(k);
    EXPECT_EQ(stage_keys, (std::vector<std::string>{"name", "passed", "message"}));

    std::vector<std::string> file_keys;
    for (const auto& [k, v] : parsed["per_file"][0].items()) file_keys.push_back(k);
    EXPECT_EQ(file_keys, (std::vector<std::string>{"file", "json_valid", "shacl_conforms",
                                                   "iterations"}));

    std::vector<std::string> result_keys;
    for (const auto& [k, v] : parsed["results"].items()) result_keys.push_back(k);
    EXPECT_EQ(result_keys, (std::vector<std::string>{"pass", "fail"}));

    EXPECT_EQ(parsed["version"], kVersion);
    EXPECT_EQ(parsed["run_date"], "2026-01-01T00:00:00Z");
    EXPECT_EQ(parsed["results"]["pass"], 1);
    EXPECT_EQ(parsed["results"]["fail"], 0);
    EXPECT_EQ(parsed["overall_passed"], true);
    EXPECT_EQ(parsed["iterations"], 1);
    EXPECT_EQ(parsed["output_files"][0], "report.json");
}

TEST(Report, RenderedJsonIsAFixpoint) {
    ValidationReport r = build_report(
        {verdict("a.jsonld", true, true), verdict("b.jsonld", true, false)},
        {{"command", "report"}}, ok_stages(), "2026-02-02T12:30:00Z", 3);
    r.output_files = {"out/report.json"};
    std::string rendered = render_report_json(r);
    EXPECT_EQ(json::parse(rendered).dump(2) + "\n", rendered);
}

TEST(Report, DeterministicAcrossRuns) {
    auto make = [] {
        ValidationReport r = build_report(
            {verdict("x.jsonld", true, true), verdict("y.jsonld", false, false)},
            {{"command", "validate"}, {"input.0", "x.jsonld"}}, ok_stages(),
            "2026-03-03T00:00:00Z");
        return render_report_json(r);
    };
    EXPECT_EQ(make(), make());
}

TEST(Report, RandomVerdictMultisetsKeepTheLaws) {
    std::mt19937 rng(2026);
    for (int round = 0; round < 50; ++round) {
        size_t n = rng() % 8;
        std::vector<FileVerdict> verdicts;
        int expect_pass = 0;
        for (size_t i = 0; i < n; ++i) {
            bool jv = rng() % 4 != 0;
            bool conf = rng() % 2 == 0;
            verdicts.push_back(verdict("f" + std::to_string(i) + ".jsonld", jv, conf));
            if (jv && conf) ++expect_pass;
        }
        auto stages = ok_stages();
        bool stages_ok = rng() % 3 != 0;
        stages[rng() % stages.size()].passed = stages_ok;

        ValidationReport r =
            build_report(verdicts, {}, stages, "2026-01-01T00:00:00Z");
        EXPECT_EQ(r.pass, expect_pass);
        EXPECT_EQ(r.pass + r.fail, static_cast<int>(n));
        EXPECT_EQ(r.overall_passed, stages_ok && r.fail == 0);
        EXPECT_EQ(r.per_file.size(), n);
    }
}

TEST(Summary, PerFileLinesWithViolationCounts) {
    Diagnostic s1;
    s1.code = "S1";
    s1.severity = Severity::kViolation;
    Diagnostic w2;
    w2.code = "W2";
    w2.severity = Severity::kWarning;
    std::vector<FileVerdict> verdicts = {
        verdict("good.jsonld", true, true, {w2}),
        verdict("bad.jsonld", true, false, {s1, s1, w2}),
    };
    EXPECT_EQ(render_summary(verdicts),
              "good.jsonld: PASS\n"
              "bad.jsonld: FAIL\n"
              "  S1 x2\n");
}

TEST(Summary, MatchBlock) {
    MatchReport m;
    m.linked = true;
    m.subtask_pairs = {{"ex:s#a", "ex:p#a"}};
    m.unmatched_problem_subtasks = {"ex:p#b"};
    m.unmatched_solution_subtasks = {"ex:s#c"};
    MetricScope sat;
    sat.problem_scope = "ex:p";
    sat.solution_scope = "ex:s";
    sat.metric = "Accuracy";
    sat.satisfied = true;
    sat.observed = {Value::make_literal(json("25.9")), Value::make_literal(json(0.5))};
    MetricScope missing;
    missing.problem_scope = "ex:p";
    missing.solution_scope = "ex:s";
    missing.metric = "F1";
    m.coverage = {sat, missing};
    Diagnostic m2;
    m2.code = "M2";
    m2.focus = "ex:p#b";
    m2.property = "cr:subTask";
    m2.severity = Severity::kWarning;
    m2.message = "problem subtask not covered by any solution subtask";
    m.record_diagnostics = {m2};
    m.fulfilled = false;

    EXPECT_EQ(render_summary({}, &m),
              "match:\n"
              "  linked: true\n"
              "  subtask ex:s#a -> ex:p#a\n"
              "  uncovered problem subtask: ex:p#b\n"
              "  unmatched solution subtask: ex:s#c\n"
              "  metric Accuracy at ex:p: satisfied (25.9, 0.5)\n"
              "  metric F1 at ex:p: MISSING\n"
              "  WARNING M2 ex:p#b cr:subTask: problem subtask not covered by any solution "
              "subtask\n"
              "  fulfilled: false\n");
}

}  // namespace
