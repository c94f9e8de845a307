#pragma once
#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "crtasks/diagnostics.hpp"
#include "crtasks/graph.hpp"
#include "crtasks/iri.hpp"
#include "crtasks/ontology.hpp"

namespace crtasks {

// One catalog entry. Codes are append-only and never renumbered.
struct Constraint {
    std::string id;
    std::string target;    // class IRI the constraint focuses on
    std::string property;  // governed property IRI, empty for node-level rules
    std::string message;
};

struct ShapeSet {
    std::vector<Constraint> catalog;

    const Constraint* find(const std::string& id) const {
        for (const auto& c : catalog)
            if (c.id == id) return &c;
        return nullptr;
    }
    const std::string& message(const std::string& id) const {
        const Constraint* c = find(id);
        if (!c) throw std::out_of_range("no constraint " + id);
        return c->message;
    }
};

inline const ShapeSet& builtin_shapes() {
    static const ShapeSet shapes = [] {
        ShapeSet s;
        auto add = [&](const char* id, std::string target, std::string property,
                       const char* message) {
            s.catalog.push_back({id, std::move(target), std::move(property), message});
        };
        add("T1", cr("Task"), cr("input"),
            "croissant:input must point to a Dataset, URL, or InputSpec");
        add("T2", cr("Task"), cr("output"),
            "croissant:output must point to a Dataset, SoftwareSourceCode, or OutputSpec");
        add("T3", cr("Task"), cr("implementation"),
            "croissant:implementation must point to a SoftwareApplication, SoftwareSourceCode, "
            "or ImplementationSpec");
        add("T4", cr("Task"), cr("execution"),
            "croissant:execution must point to ExecutionInfo (or a subclass) or ExecutionSpec");
        add("T5", cr("Task"), cr("evaluation"),
            "croissant:evaluation must be an EvaluationTask or EvaluationSpec");
        add("T6", cr("Task"), cr("subTask"), "croissant:subTask must be a Task (or subclass)");
        add("P1", cr("TaskProblem"), "",
            "A TaskProblem must have at least one property (input, output, or implementation) "
            "that is a spec class");
        add("P2", cr("TaskProblem"), cr("execution"),
            "croissant:execution on a TaskProblem must be an ExecutionSpec");
        add("P3", cr("TaskProblem"), cr("evaluation"),
            "croissant:evaluation on a TaskProblem must be an EvaluationTask or EvaluationSpec");
        add("S1", cr("TaskSolution"), sc("isBasedOn"),
            "A TaskSolution must be formally linked to a TaskProblem via schema:isBasedOn");
        add("S2", cr("TaskSolution"), "",
            "A TaskSolution cannot have an InputSpec/OutputSpec/ImplementationSpec/"
            "EvaluationSpec as a direct value");
        add("S2x", cr("TaskSolution"), cr("execution"),
            "croissant:execution on a TaskSolution should be concrete ExecutionInfo, not an "
            "ExecutionSpec");
        add("S3", cr("TaskSolution"), cr("implementation"),
            "A TaskSolution must have at least one concrete implementation, directly or in "
            "every subtask");
        add("O1", cr("OutputSpec"), cr("schema"), "croissant:schema must point to a RecordSet");
        add("R1", cr("RecordSet"), cr("field"), "A RecordSet must have at least one field");
        add("F1", cr("Field"), cr("dataType"), "A Field must have a dataType");
        add("E1", cr("EvaluationResult"), "",
            "croissant:metric and croissant:value are required on an EvaluationResult");
        add("E2", cr("EvaluationTask"), cr("evaluatedSolution"),
            "croissant:evaluatedSolution must point to exactly one TaskSolution");
        return s;
    }();
    return shapes;
}

struct FileVerdict {
    std::string source_name;
    bool json_valid = true;
    bool conforms = false;
    std::vector<Diagnostic> diagnostics;

    bool pass() const { return json_valid && conforms; }
};

namespace detail {

class ShapeChecker {
  public:
    ShapeChecker(const NodeGraph& g, const Ontology& ont, const ShapeSet& shapes)
        : g_(g), ont_(ont), shapes_(shapes) {}

    FileVerdict run() {
        build_range_rules();
        collect_solution_eval_targets();
        for (const auto& [id, node] : g_.nodes) {
            if (node.types.empty()) continue;
            auto et = effective_types(g_, ont_, id);
            if (et.count(cr("Task"))) check_task(node, et);
            if (et.count(cr("TaskProblem"))) check_problem(node);
            if (et.count(cr("TaskSolution"))) check_solution(node);
            if (et.count(cr("InputSpec")) || et.count(cr("OutputSpec")))
                check_spec_schema(node, et);
            if (et.count(cr("RecordSet"))) check_record_set(node);
            if (et.count(cr("Field"))) field_nodes_.insert(id);
            if (et.count(cr("EvaluationResult"))) check_result(node);
            if (et.count(cr("EvaluationTask"))) check_evaluation_task(node);
        }
        collect_field_candidates();
        for (const auto& id : field_nodes_) check_field(g_.nodes.at(id));
        warn_untyped_references();

        FileVerdict verdict;
        verdict.source_name = g_.source_name;
        verdict.json_valid = true;
        for (const auto& d : g_.expansion_diagnostics) diags_.push_back(d);
        for (auto& d : diags_) {
            d.focus = g_.context.compact(g_.named_ancestor(d.focus));
            if (!d.property.empty()) d.property = g_.context.compact(d.property);
        }
        sort_diagnostics(diags_);
        diags_.erase(std::unique(diags_.begin(), diags_.end(),
                                 [](const Diagnostic& a, const Diagnostic& b) {
                                     return a.code == b.code && a.focus == b.focus &&
                                            a.property == b.property &&
                                            a.severity == b.severity && a.message == b.message;
                                 }),
                     diags_.end());
        verdict.diagnostics = std::move(diags_);
        verdict.conforms = violation_count(verdict.diagnostics) == 0;
        return verdict;
    }

  private:
    // Range rule for one property: a reference must land on a node whose
    // effective types intersect `allowed`; externals are legal only when the
    // declared range includes schema:URL, and warn otherwise.
    struct RangeRule {
        std::string code;
        std::string property;
        std::set<std::string> allowed;
        bool allow_external = false;
    };

    void build_range_rules() {
        static const std::array<std::pair<const char*, const char*>, 6> kTaskProps = {{
            {"T1", "input"},
            {"T2", "output"},
            {"T3", "implementation"},
            {"T4", "execution"},
            {"T5", "evaluation"},
            {"T6", "subTask"},
        }};
        for (const auto& [code, local] : kTaskProps) {
            auto rule = rule_from_ranges(code, cr(local));
            if (rule) task_rules_.push_back(std::move(*rule));
        }
        if (auto s1 = rule_from_ranges("S1", sc("isBasedOn"))) is_based_on_rule_ = std::move(*s1);
    }

    // Literal-valued range entries are not node classes: URL signals that
    // externals are fine, Text/Number/QuantitativeValue never appear on the
    // reference-checked properties handled here.
    std::optional<RangeRule> rule_from_ranges(const char* code, const std::string& prop) {
        auto it = ont_.properties.find(prop);
        if (it == ont_.properties.end()) return std::nullopt;
        RangeRule rule;
        rule.code = code;
        rule.property = prop;
        for (const auto& r : it->second.ranges) {
            if (r == sc("URL"))
                rule.allow_external = true;
            else if (r != sc("Text") && r != sc("Number") && r != sc("QuantitativeValue"))
                rule.allowed.insert(r);
        }
        return rule;
    }

    void collect_solution_eval_targets() {
        for (const auto& [id, node] : g_.nodes) {
            if (!node.types.count(cr("TaskSolution"))) continue;
            const auto* vals = node.values(cr("evaluation"));
            if (!vals) continue;
            for (const auto& v : *vals) {
                if (!v.is_ref()) continue;
                auto res = resolve(g_, v.ref);
                if (res.kind == Resolution::Kind::kNode) solution_eval_targets_.insert(v.ref);
            }
        }
    }

    void emit(const std::string& code, const std::string& focus, const std::string& property,
              Severity severity, std::string message) {
        diags_.push_back({code, focus, property, severity, std::move(message)});
    }

    void violation(const std::string& code, const std::string& focus,
                   const std::string& property) {
        emit(code, focus, property, Severity::kViolation, shapes_.message(code));
    }

    void warn_external(const std::string& focus, const std::string& property,
                       const std::string& iri) {
        emit("W2", focus, property, Severity::kWarning,
             "unverifiable external reference " + g_.context.compact(iri));
    }

    std::set<std::string> types_of(const std::string& id) const {
        return effective_types(g_, ont_, id);
    }

    static bool intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
        for (const auto& x : a)
            if (b.count(x)) return true;
        return false;
    }

    void check_values(const Node& node, const RangeRule& rule) {
        const auto* vals = node.values(rule.property);
        if (!vals) return;
        for (const auto& v : *vals) {
            if (!v.is_ref()) {
                if (v.is_text() && looks_absolute_iri(v.text())) {
                    if (!rule.allow_external) warn_external(node.id, rule.property, v.text());
                } else {
                    violation(rule.code, node.id, rule.property);
                }
                continue;
            }
            auto res = resolve(g_, v.ref);
            if (res.kind == Resolution::Kind::kMissing) {
                violation(rule.code, node.id, rule.property);
            } else if (res.kind == Resolution::Kind::kDanglingExternal) {
                if (!rule.allow_external) warn_external(node.id, rule.property, v.ref);
            } else if (!res.node->types.empty() &&
                       !intersects(types_of(v.ref), rule.allowed)) {
                violation(rule.code, node.id, rule.property);
            }
            // Untyped in-document targets are handled once by the W1 pass.
        }
    }

    void check_task(const Node& node, const std::set<std::string>& et) {
        bool is_problem = et.count(cr("TaskProblem")) != 0;
        for (const auto& rule : task_rules_) {
            // P2/P3 own execution and evaluation on problems.
            if (is_problem &&
                (rule.property == cr("execution") || rule.property == cr("evaluation")))
                continue;
            check_values(node, rule);
        }
    }

    // True when some value of `prop` resolves in-document to a node of the
    // given class.
    bool has_typed_value(const Node& node, const std::string& prop, const std::string& cls) {
        const auto* vals = node.values(prop);
        if (!vals) return false;
        for (const auto& v : *vals) {
            if (!v.is_ref()) continue;
            auto res = resolve(g_, v.ref);
            if (res.kind != Resolution::Kind::kNode || res.node->types.empty()) continue;
            if (types_of(v.ref).count(cls)) return true;
        }
        return false;
    }

    void check_problem(const Node& node) {
        bool has_spec = has_typed_value(node, cr("input"), cr("InputSpec")) ||
                        has_typed_value(node, cr("output"), cr("OutputSpec")) ||
                        has_typed_value(node, cr("implementation"), cr("ImplementationSpec"));
        if (!has_spec) violation("P1", node.id, "");
        check_values(node, {"P2", cr("execution"), {cr("ExecutionSpec")}, false});
        check_values(node, {"P3", cr("evaluation"),
                            {cr("EvaluationTask"), cr("EvaluationSpec")}, false});
    }

    void check_solution(const Node& node) {
        const auto* based = node.values(sc("isBasedOn"));
        if (!based || based->empty())
            violation("S1", node.id, sc("isBasedOn"));
        else
            check_values(node, is_based_on_rule_);

        static const std::set<std::string> kSpecClasses = {
            cr("InputSpec"), cr("OutputSpec"), cr("ImplementationSpec"), cr("EvaluationSpec")};
        for (const auto* local : {"input", "output", "implementation", "evaluation"}) {
            const auto* vals = node.values(cr(local));
            if (!vals) continue;
            for (const auto& v : *vals) {
                if (!v.is_ref()) continue;
                auto res = resolve(g_, v.ref);
                if (res.kind != Resolution::Kind::kNode || res.node->types.empty()) continue;
                if (intersects(types_of(v.ref), kSpecClasses))
                    violation("S2", node.id, cr(local));
            }
        }
        if (const auto* execs = node.values(cr("execution"))) {
            for (const auto& v : *execs) {
                if (!v.is_ref()) continue;
                auto res = resolve(g_, v.ref);
                if (res.kind == Resolution::Kind::kNode &&
                    res.node->types.count(cr("ExecutionSpec")))
                    emit("S2x", node.id, cr("execution"), Severity::kWarning,
                         shapes_.message("S2x"));
            }
        }
        check_s3(node);
    }

    // A value counts as a concrete implementation unless it is an in-document
    // ImplementationSpec; broken references stay T3's finding, not S3's.
    bool concrete_implementation(const Node& node) {
        const auto* vals = node.values(cr("implementation"));
        if (!vals) return false;
        for (const auto& v : *vals) {
            if (!v.is_ref()) {
                if (v.is_text() && looks_absolute_iri(v.text())) return true;
                continue;
            }
            auto res = resolve(g_, v.ref);
            if (res.kind != Resolution::Kind::kNode) return true;
            if (res.node->types.empty()) return true;
            if (!types_of(v.ref).count(cr("ImplementationSpec"))) return true;
        }
        return false;
    }

    std::vector<const Node*> subtask_nodes(const Node& node) const {
        std::vector<const Node*> out;
        const auto* vals = node.values(cr("subTask"));
        if (!vals) return out;
        for (const auto& v : *vals) {
            if (!v.is_ref()) continue;
            auto res = resolve(g_, v.ref);
            if (res.kind == Resolution::Kind::kNode) out.push_back(res.node);
        }
        return out;
    }

    bool deep_satisfied(const Node& node, std::set<std::string>& visited) {
        if (!visited.insert(node.id).second) return false;
        if (concrete_implementation(node)) return true;
        const auto* vals = node.values(cr("subTask"));
        if (!vals || vals->empty()) return false;
        auto subs = subtask_nodes(node);
        if (subs.empty()) return true;  // external subtasks are unverifiable, not faults
        for (const auto* sub : subs)
            if (!deep_satisfied(*sub, visited)) return false;
        return true;
    }

    void check_s3(const Node& node) {
        if (concrete_implementation(node)) return;
        const auto* vals = node.values(cr("subTask"));
        if (!vals || vals->empty()) {
            violation("S3", node.id, cr("implementation"));
            return;
        }
        auto subs = subtask_nodes(node);
        if (subs.empty()) return;
        bool all_direct = true, all_deep = true;
        for (const auto* sub : subs) {
            if (concrete_implementation(*sub)) continue;
            all_direct = false;
            std::set<std::string> visited{node.id};
            if (!deep_satisfied(*sub, visited)) all_deep = false;
        }
        if (all_direct) return;
        if (all_deep)
            emit("W3", node.id, cr("subTask"), Severity::kWarning,
                 "implementation is provided only by nested subtasks, not by every direct "
                 "subtask");
        else
            violation("S3", node.id, cr("implementation"));
    }

    void check_spec_schema(const Node& node, const std::set<std::string>& et) {
        const auto* vals = node.values(cr("schema"));
        if (!vals || vals->empty()) {
            if (et.count(cr("OutputSpec"))) violation("O1", node.id, cr("schema"));
            return;
        }
        for (const auto& v : *vals) {
            if (!v.is_ref()) {
                if (v.is_text() && looks_absolute_iri(v.text()))
                    warn_external(node.id, cr("schema"), v.text());
                else
                    violation("O1", node.id, cr("schema"));
                continue;
            }
            auto res = resolve(g_, v.ref);
            if (res.kind == Resolution::Kind::kMissing)
                violation("O1", node.id, cr("schema"));
            else if (res.kind == Resolution::Kind::kDanglingExternal)
                warn_external(node.id, cr("schema"), v.ref);
            else if (!res.node->types.empty() && !res.node->types.count(cr("RecordSet")))
                violation("O1", node.id, cr("schema"));
        }
    }

    void check_record_set(const Node& node) {
        const auto* vals = node.values(cr("field"));
        if (!vals || vals->empty()) violation("R1", node.id, cr("field"));
    }

    void collect_field_candidates() {
        for (const auto& [id, node] : g_.nodes) {
            const auto* vals = node.values(cr("field"));
            if (!vals) continue;
            for (const auto& v : *vals) {
                if (!v.is_ref()) continue;
                auto res = resolve(g_, v.ref);
                if (res.kind == Resolution::Kind::kNode) field_nodes_.insert(v.ref);
            }
        }
    }

    void check_field(const Node& node) {
        const Value* dt = node.first_value(cr("dataType"));
        if (!dt || !dt->is_ref()) violation("F1", node.id, cr("dataType"));
    }

    void check_result(const Node& node) {
        const auto* metric = node.values(cr("metric"));
        const auto* value = node.values(cr("value"));
        bool has_metric = metric && !metric->empty();
        bool has_value = value && !value->empty();
        if (has_metric && has_value) return;
        std::string property;
        if (has_metric != has_value) property = has_metric ? cr("value") : cr("metric");
        emit("E1", node.id, property, Severity::kViolation, shapes_.message("E1"));
    }

    // Exactly-one cardinality applies where an evaluated solution is
    // determinate: EvaluationTasks hanging off a TaskSolution's evaluation.
    // Standalone EvaluationTasks (a plain Task's evaluation) may omit it.
    void check_evaluation_task(const Node& node) {
        const auto* vals = node.values(cr("evaluatedSolution"));
        size_t n = vals ? vals->size() : 0;
        if (n == 0) {
            if (solution_eval_targets_.count(node.id))
                violation("E2", node.id, cr("evaluatedSolution"));
            return;
        }
        if (n >= 2) {
            violation("E2", node.id, cr("evaluatedSolution"));
            return;
        }
        const Value& v = (*vals)[0];
        if (!v.is_ref()) {
            violation("E2", node.id, cr("evaluatedSolution"));
            return;
        }
        auto res = resolve(g_, v.ref);
        if (res.kind == Resolution::Kind::kMissing)
            violation("E2", node.id, cr("evaluatedSolution"));
        else if (res.kind == Resolution::Kind::kDanglingExternal)
            warn_external(node.id, cr("evaluatedSolution"), v.ref);
        else if (!res.node->types.empty() && !types_of(v.ref).count(cr("TaskSolution")))
            violation("E2", node.id, cr("evaluatedSolution"));
    }

    void warn_untyped_references() {
        std::map<std::string, std::string> untyped;  // node id -> referencing property
        for (const auto& [id, node] : g_.nodes) {
            if (node.types.empty()) continue;
            for (const auto& [prop, vals] : node.props) {
                for (const auto& v : vals) {
                    if (!v.is_ref()) continue;
                    auto res = resolve(g_, v.ref);
                    if (res.kind != Resolution::Kind::kNode || !res.node->types.empty())
                        continue;
                    auto [it, inserted] = untyped.try_emplace(v.ref, prop);
                    if (!inserted && prop < it->second) it->second = prop;
                }
            }
        }
        for (const auto& [id, prop] : untyped)
            emit("W1", id, prop, Severity::kWarning,
                 "referenced node has no @type; constraints cannot be checked");
    }

    const NodeGraph& g_;
    const Ontology& ont_;
    const ShapeSet& shapes_;
    std::vector<RangeRule> task_rules_;
    RangeRule is_based_on_rule_{"S1", sc("isBasedOn"), {cr("TaskProblem")}, true};
    std::set<std::string> solution_eval_targets_;
    std::set<std::string> field_nodes_;
    std::vector<Diagnostic> diags_;
};

}  // namespace detail

// Pure evaluation of the constraint catalog; every finding is a diagnostic,
// sorted by (focus, code, property) with structural duplicates removed.
inline FileVerdict validate_graph(const NodeGraph& graph, const Ontology& ont,
                                  const ShapeSet& shapes) {
    return detail::ShapeChecker(graph, ont, shapes).run();
}

inline FileVerdict validate_graph(const NodeGraph& graph, const Ontology& ont) {
    return validate_graph(graph, ont, builtin_shapes());
}

// One line per diagnostic, then PASS or FAIL with the violation count.
inline std::string render_text(const FileVerdict& verdict) {
    std::string out;
    for (const auto& d : verdict.diagnostics) {
        out += severity_name(d.severity);
        out += ' ';
        out += d.code;
        out += ' ';
        out += d.focus;
        out += ' ';
        out += d.property.empty() ? "-" : d.property;
        out += " \xE2\x80\x94 ";
        out += d.message;
        out += '\n';
    }
    if (verdict.pass()) {
        out += "PASS\n";
    } else {
        size_t n = violation_count(verdict.diagnostics);
        out += "FAIL (" + std::to_string(n) + (n == 1 ? " violation)\n" : " violations)\n");
    }
    return out;
}

}  // namespace crtasks
