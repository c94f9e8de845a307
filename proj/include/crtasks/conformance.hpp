#pragma once
#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crtasks/diagnostics.hpp"
#include "crtasks/graph.hpp"
#include "crtasks/iri.hpp"
#include "crtasks/ontology.hpp"
#include "crtasks/pattern.hpp"

namespace crtasks {

// One field of an output RecordSet schema, as declared by a problem document.
struct FieldSpec {
    std::string name;
    std::string data_type;  // expanded IRI; empty when the field declares none
    std::optional<std::string> value_pattern;
    std::optional<std::string> description;
    std::optional<bool> repeated;
};

// Expected-metric coverage for one problem/solution scope (root or one
// subtask pair). `observed` holds the cr:value literals of matching results.
struct MetricScope {
    std::string problem_scope;
    std::string solution_scope;
    std::string metric;
    bool satisfied = false;
    std::vector<Value> observed;
};

struct MatchOptions {
    bool lenient_metrics = false;  // fold case and collapse whitespace in metric names
    bool strict = false;           // native-typed record values only
};

struct MatchReport {
    bool linked = false;
    std::vector<std::pair<std::string, std::string>> subtask_pairs;  // (solution, problem)
    std::vector<std::string> unmatched_problem_subtasks;
    std::vector<std::string> unmatched_solution_subtasks;
    std::vector<MetricScope> coverage;
    std::map<std::string, bool> metric_coverage;
    std::vector<Diagnostic> record_diagnostics;
    bool fulfilled = false;
};

inline std::string trim_text(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(s.back())) s.pop_back();
    size_t i = 0;
    while (i < s.size() && issp(s[i])) ++i;
    return s.substr(i);
}

// Case-folded, internal whitespace collapsed; the --lenient-metrics key form.
inline std::string fold_metric(const std::string& s) {
    std::string out;
    bool pending_space = false;
    for (unsigned char c : trim_text(s)) {
        if (std::isspace(c)) {
            pending_space = true;
            continue;
        }
        if (pending_space && !out.empty()) out += ' ';
        pending_space = false;
        out += static_cast<char>(std::tolower(c));
    }
    return out;
}

// Text and IRI metrics compare as opaque strings.
inline std::string metric_key(const Value& v) {
    if (v.is_ref()) return v.ref;
    if (v.is_text()) return trim_text(v.text());
    return v.literal.dump();
}

inline bool check_value_pattern(std::string_view value, std::string_view pattern) {
    return compile_pattern(pattern).full_match(value);
}

inline bool is_opaque_datatype(const std::string& data_type) {
    return data_type != xsd("string") && data_type != xsd("integer") &&
           data_type != xsd("float") && data_type != xsd("double") &&
           data_type != xsd("boolean");
}

// Lexical conformance of one record value. Lenient mode accepts text
// encodings of numbers and booleans (and scalar-to-string coercion); strict
// mode requires native JSON types for the numeric and boolean datatypes.
inline bool check_datatype(const Value& v, const std::string& data_type, bool strict = false) {
    if (is_opaque_datatype(data_type)) return true;
    if (v.is_ref()) return false;
    const json& j = v.literal;
    if (data_type == xsd("string")) {
        if (j.is_string()) return true;
        return !strict && (j.is_number() || j.is_boolean());
    }
    if (data_type == xsd("integer")) {
        if (j.is_number_integer() || j.is_number_unsigned()) return true;
        if (j.is_string() && !strict) {
            static const Pattern kInteger = compile_pattern("[+-]?[0-9]+");
            return kInteger.full_match(j.get<std::string>());
        }
        return false;
    }
    if (data_type == xsd("float") || data_type == xsd("double")) {
        if (j.is_number()) return true;
        if (j.is_string() && !strict) {
            static const Pattern kFloat =
                compile_pattern("[+-]?([0-9]+(\\.[0-9]*)?|\\.[0-9]+)([eE][+-]?[0-9]+)?");
            return kFloat.full_match(j.get<std::string>());
        }
        return false;
    }
    // boolean
    if (j.is_boolean()) return true;
    if (j.is_string() && !strict) {
        const std::string s = j.get<std::string>();
        return s == "true" || s == "false";
    }
    return false;
}

// Walks problem root -> cr:output -> OutputSpec -> cr:schema -> RecordSet ->
// cr:field and lifts each field node into a FieldSpec. Unnamed fields cannot
// bind record keys and are skipped.
inline std::vector<FieldSpec> output_field_specs(const NodeGraph& problem) {
    std::vector<FieldSpec> out;
    std::set<std::string> seen;
    auto in_doc = [&](const Value& v) -> const Node* {
        if (!v.is_ref()) return nullptr;
        auto res = resolve(problem, v.ref);
        return res.kind == Resolution::Kind::kNode ? res.node : nullptr;
    };
    const auto* outputs = problem.root_node().values(cr("output"));
    if (!outputs) return out;
    for (const auto& ov : *outputs) {
        const Node* spec = in_doc(ov);
        if (!spec || !spec->types.count(cr("OutputSpec"))) continue;
        const auto* schemas = spec->values(cr("schema"));
        if (!schemas) continue;
        for (const auto& sv : *schemas) {
            const Node* record_set = in_doc(sv);
            if (!record_set) continue;
            const auto* fields = record_set->values(cr("field"));
            if (!fields) continue;
            for (const auto& fv : *fields) {
                const Node* field = in_doc(fv);
                if (!field || !seen.insert(field->id).second) continue;
                FieldSpec fs;
                if (const Value* name = field->first_value(sc("name")); name && name->is_text())
                    fs.name = trim_text(name->text());
                if (fs.name.empty()) continue;
                if (const Value* dt = field->first_value(cr("dataType")); dt && dt->is_ref())
                    fs.data_type = dt->ref;
                if (const Value* p = field->first_value(sc("valuePattern")); p && p->is_text())
                    fs.value_pattern = p->text();
                if (const Value* d = field->first_value(sc("description")); d && d->is_text())
                    fs.description = d->text();
                if (const Value* r = field->first_value(cr("repeated"))) {
                    if (!r->is_ref() && r->literal.is_boolean())
                        fs.repeated = r->literal.get<bool>();
                    else if (r->is_text())
                        fs.repeated = r->text() == "true";
                }
                out.push_back(std::move(fs));
            }
        }
    }
    return out;
}

namespace detail {

inline Diagnostic record_diag(std::string code, std::string focus, std::string property,
                              Severity severity, std::string message) {
    return {std::move(code), std::move(focus), std::move(property), severity,
            std::move(message)};
}

}  // namespace detail

// Checks concrete records (one JSON object each) against the field specs.
// RC1 missing required field, RC2 datatype mismatch, RC3 pattern mismatch
// (violations); RC4 undeclared field, W4 opaque datatype (warnings). Pattern
// compile failures are reported as RC0 rather than thrown, keeping the
// function total.
inline std::vector<Diagnostic> check_records(const std::vector<json>& records,
                                             const std::vector<FieldSpec>& spec,
                                             bool strict = false) {
    using detail::record_diag;
    std::vector<Diagnostic> out;

    struct CompiledField {
        const FieldSpec* f;
        std::optional<Pattern> pattern;
    };
    std::vector<CompiledField> compiled;
    std::set<std::string> declared;
    for (const auto& f : spec) {
        CompiledField cf{&f, std::nullopt};
        declared.insert(f.name);
        if (f.value_pattern) {
            try {
                cf.pattern = compile_pattern(*f.value_pattern);
            } catch (const PatternError& e) {
                out.push_back(record_diag("RC0", f.name,
                                          builtin_doc_prefixes().compact(sc("valuePattern")),
                                          Severity::kViolation,
                                          std::string("valuePattern does not compile: ") +
                                              e.what()));
            }
        }
        if (!f.data_type.empty() && is_opaque_datatype(f.data_type))
            out.push_back(record_diag(
                "W4", f.name, builtin_doc_prefixes().compact(cr("dataType")), Severity::kWarning,
                "opaque datatype " + builtin_doc_prefixes().compact(f.data_type) +
                    "; only pattern checks applied"));
        compiled.push_back(std::move(cf));
    }

    for (size_t i = 0; i < records.size(); ++i) {
        const json& record = records[i];
        std::string focus = "record[" + std::to_string(i) + "]";
        if (!record.is_object()) {
            out.push_back(record_diag("RC1", focus, "", Severity::kViolation,
                                      "record is not a JSON object"));
            continue;
        }
        for (const auto& cf : compiled) {
            const FieldSpec& f = *cf.f;
            auto it = record.find(f.name);
            if (it == record.end()) {
                out.push_back(record_diag("RC1", focus, f.name, Severity::kViolation,
                                          "required field '" + f.name + "' is missing"));
                continue;
            }
            std::vector<const json*> elements;
            if (it->is_array()) {
                if (!f.repeated.value_or(false)) {
                    out.push_back(record_diag("RC2", focus, f.name, Severity::kViolation,
                                              "field '" + f.name +
                                                  "' must be a single value, not an array"));
                    continue;
                }
                for (const auto& e : *it) elements.push_back(&e);
            } else {
                elements.push_back(&*it);
            }
            for (const json* e : elements) {
                if (e->is_object() || e->is_array() || e->is_null()) {
                    out.push_back(record_diag("RC2", focus, f.name, Severity::kViolation,
                                              "field '" + f.name + "' must be a scalar"));
                    continue;
                }
                Value v = Value::make_literal(*e);
                if (!f.data_type.empty() && !check_datatype(v, f.data_type, strict))
                    out.push_back(record_diag(
                        "RC2", focus, f.name, Severity::kViolation,
                        "value " + e->dump() + " does not conform to " +
                            builtin_doc_prefixes().compact(f.data_type)));
                if (cf.pattern && v.is_text() && !cf.pattern->full_match(v.text()))
                    out.push_back(record_diag(
                        "RC3", focus, f.name, Severity::kViolation,
                        "value " + e->dump() + " does not match pattern " + *f.value_pattern));
            }
        }
        for (const auto& [key, unused] : record.items()) {
            if (!declared.count(key))
                out.push_back(record_diag("RC4", focus, key, Severity::kWarning,
                                          "field not declared in the output schema"));
        }
    }
    return out;
}

// Parses a JSON-lines records file: one object per non-blank line.
inline std::vector<json> parse_json_lines(std::string_view text) {
    std::vector<json> out;
    size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (!blank) {
            try {
                out.push_back(json::parse(line));
            } catch (const nlohmann::json::parse_error& e) {
                throw std::runtime_error("records line " + std::to_string(line_no) + ": " +
                                         e.what());
            }
        }
        if (end == text.size()) break;
    }
    return out;
}

namespace detail {

class Matcher {
  public:
    Matcher(const NodeGraph& problem, const NodeGraph& solution, const Ontology& ont,
            const MatchOptions& opts, const std::vector<json>* records)
        : problem_(problem), solution_(solution), ont_(ont), opts_(opts), records_(records) {}

    MatchReport run() {
        check_linkage();
        pair_subtasks();
        cover_scope(problem_.root_node(), solution_.root_node());
        for (const auto& [sol_id, prob_id] : pairs_)
            cover_scope(problem_.nodes.at(prob_id), solution_.nodes.at(sol_id));
        check_record_conformance();

        bool all_metrics = true;
        for (const auto& [metric, ok] : report_.metric_coverage) all_metrics &= ok;
        report_.fulfilled = report_.linked && all_metrics &&
                            report_.unmatched_solution_subtasks.empty() &&
                            violation_count(report_.record_diagnostics) == 0;
        return std::move(report_);
    }

  private:
    // isBasedOn targets of a node, expanded against its own document context.
    std::vector<std::string> based_on_targets(const NodeGraph& g, const Node& node) const {
        std::vector<std::string> out;
        const auto* vals = node.values(sc("isBasedOn"));
        if (!vals) return out;
        for (const auto& v : *vals) {
            if (v.is_ref()) out.push_back(v.ref);
            else if (v.is_text()) {
                auto iri = g.context.expand(v.text());
                if (iri) out.push_back(*iri);
            }
        }
        return out;
    }

    void check_linkage() {
        for (const auto& target : based_on_targets(solution_, solution_.root_node()))
            if (target == problem_.root) report_.linked = true;
    }

    std::vector<std::string> subtask_ids(const NodeGraph& g, const Node& node) const {
        std::vector<std::string> out;
        const auto* vals = node.values(cr("subTask"));
        if (!vals) return out;
        for (const auto& v : *vals) {
            if (!v.is_ref()) continue;
            auto res = resolve(g, v.ref);
            if (res.kind == Resolution::Kind::kNode) out.push_back(v.ref);
        }
        return out;
    }

    void pair_subtasks() {
        auto prob_subs = subtask_ids(problem_, problem_.root_node());
        auto sol_subs = subtask_ids(solution_, solution_.root_node());
        std::set<std::string> prob_set(prob_subs.begin(), prob_subs.end());
        std::map<std::string, std::string> claimed;  // problem id -> solution id

        for (const auto& sol_id : sol_subs) {
            const Node& sol_node = solution_.nodes.at(sol_id);
            std::string matched;
            for (const auto& target : based_on_targets(solution_, sol_node)) {
                if (prob_set.count(target)) {
                    matched = target;
                    break;
                }
            }
            if (matched.empty()) {
                report_.unmatched_solution_subtasks.push_back(
                    solution_.context.compact(sol_id));
                continue;
            }
            auto [it, inserted] = claimed.try_emplace(matched, sol_id);
            if (!inserted) {
                report_.record_diagnostics.push_back(
                    {"M1", solution_.context.compact(sol_id),
                     solution_.context.compact(sc("isBasedOn")), Severity::kViolation,
                     "problem subtask " + problem_.context.compact(matched) +
                         " is already claimed by " + solution_.context.compact(it->second)});
                continue;
            }
            pairs_.emplace_back(sol_id, matched);
            report_.subtask_pairs.emplace_back(solution_.context.compact(sol_id),
                                               problem_.context.compact(matched));
        }
        for (const auto& prob_id : prob_subs) {
            if (claimed.count(prob_id)) continue;
            std::string compacted = problem_.context.compact(prob_id);
            report_.unmatched_problem_subtasks.push_back(compacted);
            report_.record_diagnostics.push_back(
                {"M2", compacted, problem_.context.compact(cr("subTask")), Severity::kWarning,
                 "problem subtask not covered by any solution subtask"});
        }
    }

    std::string norm(const std::string& metric) const {
        return opts_.lenient_metrics ? fold_metric(metric) : metric;
    }

    std::vector<std::string> expected_metrics(const Node& prob_node) const {
        std::vector<std::string> out;
        std::set<std::string> seen;
        const auto* evals = prob_node.values(cr("evaluation"));
        if (!evals) return out;
        for (const auto& ev : *evals) {
            if (!ev.is_ref()) continue;
            auto res = resolve(problem_, ev.ref);
            if (res.kind != Resolution::Kind::kNode ||
                !res.node->types.count(cr("EvaluationSpec")))
                continue;
            const auto* metrics = res.node->values(cr("expectedMetric"));
            if (!metrics) continue;
            for (const auto& m : *metrics) {
                std::string key = metric_key(m);
                if (!key.empty() && seen.insert(key).second) out.push_back(key);
            }
        }
        return out;
    }

    struct ObservedResult {
        std::string metric;
        std::vector<Value> values;
    };

    std::vector<ObservedResult> observed_results(const Node& sol_node) const {
        std::vector<ObservedResult> out;
        const auto* evals = sol_node.values(cr("evaluation"));
        if (!evals) return out;
        for (const auto& ev : *evals) {
            if (!ev.is_ref()) continue;
            auto eres = resolve(solution_, ev.ref);
            if (eres.kind != Resolution::Kind::kNode ||
                !eres.node->types.count(cr("EvaluationTask")))
                continue;
            const auto* results = eres.node->values(cr("evaluationResults"));
            if (!results) continue;
            for (const auto& rv : *results) {
                if (!rv.is_ref()) continue;
                auto rres = resolve(solution_, rv.ref);
                if (rres.kind != Resolution::Kind::kNode) continue;
                ObservedResult obs;
                if (const Value* m = rres.node->first_value(cr("metric")))
                    obs.metric = metric_key(*m);
                if (const auto* vals = rres.node->values(cr("value"))) obs.values = *vals;
                out.push_back(std::move(obs));
            }
        }
        return out;
    }

    void cover_scope(const Node& prob_node, const Node& sol_node) {
        auto expected = expected_metrics(prob_node);
        auto observed = observed_results(sol_node);
        for (const auto& metric : expected) {
            MetricScope scope;
            scope.problem_scope = problem_.context.compact(prob_node.id);
            scope.solution_scope = solution_.context.compact(sol_node.id);
            scope.metric = metric;
            for (const auto& obs : observed) {
                if (norm(obs.metric) != norm(metric)) continue;
                scope.satisfied = true;
                scope.observed.insert(scope.observed.end(), obs.values.begin(),
                                      obs.values.end());
            }
            auto [it, inserted] = report_.metric_coverage.try_emplace(metric, scope.satisfied);
            if (!inserted) it->second = it->second && scope.satisfied;
            report_.coverage.push_back(std::move(scope));
        }
    }

    void check_record_conformance() {
        std::string output_prop = problem_.context.compact(cr("output"));
        if (!records_) {
            report_.record_diagnostics.push_back(
                {"W5", problem_.context.compact(problem_.root), output_prop,
                 Severity::kWarning, "no concrete records supplied; record checks skipped"});
            return;
        }
        auto specs = output_field_specs(problem_);
        if (specs.empty()) {
            report_.record_diagnostics.push_back(
                {"W5", problem_.context.compact(problem_.root), output_prop,
                 Severity::kWarning,
                 "problem declares no named output fields; record checks skipped"});
            return;
        }
        auto diags = check_records(*records_, specs, opts_.strict);
        report_.record_diagnostics.insert(report_.record_diagnostics.end(), diags.begin(),
                                          diags.end());
    }

    const NodeGraph& problem_;
    const NodeGraph& solution_;
    const Ontology& ont_;
    const MatchOptions& opts_;
    const std::vector<json>* records_;
    std::vector<std::pair<std::string, std::string>> pairs_;  // expanded ids
    MatchReport report_;
};

}  // namespace detail

// Verifies that `solution` fulfills `problem`: linkage via isBasedOn, subtask
// pairing (strictly by isBasedOn id), expected-metric coverage at root and
// per pair, and record conformance when concrete records are supplied
// (absent records yield warning W5 and skip those checks).
inline MatchReport match_solution(const NodeGraph& problem, const NodeGraph& solution,
                                  const Ontology& ont, const MatchOptions& opts = {},
                                  const std::vector<json>* records = nullptr) {
    return detail::Matcher(problem, solution, ont, opts, records).run();
}

}  // namespace crtasks
