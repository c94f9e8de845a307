#pragma once
// Single-fault mutants of the golden corpus. Each entry applies one JSON edit
// to a fixture and predicts the one violation it must produce: the code and
// the (compacted) focus node. The golden fixtures themselves validate clean,
// so any second diagnostic is a checker bug, not fixture noise.
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "crtasks/graph.hpp"

namespace testsupport {

using crtasks::json;

inline std::string fixture_path(const std::string& name) {
    return std::string(CRTASKS_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

inline json fixture_json(const std::string& name) { return json::parse(read_fixture(name)); }

constexpr const char* kTaskFixture = "mmlu_task.jsonld";
constexpr const char* kProblemFixture = "mmlu_problem.jsonld";
constexpr const char* kSolutionFixture = "mmlu_solution.jsonld";

struct Mutant {
    const char* code;     // expected violation code
    const char* fixture;  // golden document the edit applies to
    const char* focus;    // expected compacted focus of the violation
    void (*apply)(json&);
};

inline const std::vector<Mutant>& mutants() {
    static const std::vector<Mutant> all = {
        {"T1", kProblemFixture, "ex:mmlu_problem",
         [](json& d) { d["cr:input"] = json{{"@id", "ex:mmlu#missing_input"}}; }},
        {"T2", kTaskFixture, "ex:mmlu_small_fewshot",
         [](json& d) { d["cr:output"]["@type"] = "sc:Person"; }},
        {"T3", kTaskFixture, "ex:mmlu_small_fewshot",
         [](json& d) { d["cr:implementation"]["@type"] = "sc:Person"; }},
        {"T4", kSolutionFixture, "ex:mmlu_sol_small_fewshot#stem_sol",
         [](json& d) {
             d["cr:subTask"][1]["cr:execution"] =
                 json{{"@id", "ex:mmlu_sol_small_fewshot#no_such_execution"}};
         }},
        {"T5", kTaskFixture, "ex:mmlu_small_fewshot",
         [](json& d) { d["cr:evaluation"]["@type"] = "sc:Thing"; }},
        {"T6", kProblemFixture, "ex:mmlu_problem",
         [](json& d) { d["cr:subTask"][0]["@type"] = "sc:Dataset"; }},
        {"P1", kProblemFixture, "ex:mmlu_problem",
         [](json& d) { d["cr:output"]["@type"] = "sc:Dataset"; }},
        {"P2", kProblemFixture, "ex:mmlu_problem",
         [](json& d) {
             d["cr:execution"] =
                 json{{"@id", "ex:mmlu#execution_info"}, {"@type", "cr:ExecutionInfo"}};
         }},
        {"P3", kProblemFixture, "ex:mmlu#stem_fewshot",
         [](json& d) {
             d["cr:subTask"][1]["cr:evaluation"] = json{{"@id", "ex:mmlu#no_such_eval"}};
         }},
        {"S1", kSolutionFixture, "ex:mmlu_sol_small_fewshot",
         [](json& d) { d.erase("sc:isBasedOn"); }},
        {"S2", kSolutionFixture, "ex:mmlu_sol_small_fewshot",
         [](json& d) { d["cr:evaluation"]["@type"] = "cr:EvaluationSpec"; }},
        {"S3", kSolutionFixture, "ex:mmlu_sol_small_fewshot#humanities_sol",
         [](json& d) { d["cr:subTask"][0].erase("cr:implementation"); }},
        {"O1", kProblemFixture, "ex:mmlu#outputSpec",
         [](json& d) { d["cr:output"].erase("cr:schema"); }},
        {"R1", kProblemFixture, "ex:mmlu#outputSpec",
         [](json& d) { d["cr:output"]["cr:schema"]["cr:field"] = json::array(); }},
        {"F1", kProblemFixture, "ex:mmlu#outputSpec",
         [](json& d) { d["cr:output"]["cr:schema"]["cr:field"][0].erase("cr:dataType"); }},
        {"E1", kSolutionFixture, "ex:mmlu_sol_small_fewshot#humanities_sol",
         [](json& d) {
             d["cr:subTask"][0]["cr:evaluation"]["cr:evaluationResults"][0].erase("cr:value");
         }},
        {"E2", kSolutionFixture, "ex:mmlu_sol_small_fewshot#humanities_sol",
         [](json& d) {
             d["cr:subTask"][0]["cr:evaluation"].erase("cr:evaluatedSolution");
         }},
    };
    return all;
}

inline std::string mutated_text(const Mutant& m) {
    json doc = fixture_json(m.fixture);
    m.apply(doc);
    return doc.dump(2);
}

}  // namespace testsupport
