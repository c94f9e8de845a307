#pragma once
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "crtasks/diagnostics.hpp"
#include "crtasks/iri.hpp"
#include "crtasks/ontology.hpp"

namespace crtasks {

using json = nlohmann::ordered_json;

// Document-level failure that prevents building a graph at all. Everything
// softer becomes a Diagnostic on the graph.
struct ExpandError : std::runtime_error {
    enum class Kind { kJsonSyntax, kBadContext, kBadRoot, kBadTerm, kTypeConflict };
    ExpandError(Kind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
    Kind kind;
};

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Node reference or literal. Literals keep their parsed JSON value so
// canonical output reproduces the source token (string "25.9" vs number 25.9).
struct Value {
    enum class Kind { kRef, kLiteral };
    Kind kind = Kind::kLiteral;
    std::string ref;  // expanded IRI when kind == kRef
    json literal;

    static Value make_ref(std::string iri) {
        Value v;
        v.kind = Kind::kRef;
        v.ref = std::move(iri);
        return v;
    }
    static Value make_literal(json j) {
        Value v;
        v.kind = Kind::kLiteral;
        v.literal = std::move(j);
        return v;
    }

    bool is_ref() const { return kind == Kind::kRef; }
    bool is_text() const { return kind == Kind::kLiteral && literal.is_string(); }
    bool is_number() const { return kind == Kind::kLiteral && literal.is_number(); }

    std::string text() const { return literal.get<std::string>(); }

    bool operator==(const Value& other) const {
        return kind == other.kind && ref == other.ref && literal == other.literal;
    }
};

// Text "25.9" and number 25.9 compare equal; used for metric/value
// comparisons, never for structural dedup.
inline bool lenient_equal(const Value& a, const Value& b) {
    if (a == b) return true;
    auto as_number = [](const Value& v) -> std::optional<double> {
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
    };
    auto na = as_number(a), nb = as_number(b);
    return na && nb && *na == *nb;
}

struct Node {
    std::string id;
    bool synthetic = false;
    std::string parent;         // enclosing definition, for synthetic focus remapping
    std::string parent_prop;    // property IRI under which this node appeared
    std::set<std::string> types;
    std::map<std::string, std::vector<Value>> props;

    const std::vector<Value>* values(const std::string& prop) const {
        auto it = props.find(prop);
        return it == props.end() ? nullptr : &it->second;
    }
    const Value* first_value(const std::string& prop) const {
        const auto* vs = values(prop);
        return vs && !vs->empty() ? &(*vs)[0] : nullptr;
    }
};

struct NodeGraph {
    std::string source_name;
    std::string root;
    std::map<std::string, Node> nodes;
    PrefixTable context;
    std::vector<Diagnostic> expansion_diagnostics;
    std::set<std::string> defined_bases;  // pre-'#' bases of non-synthetic ids

    const Node& root_node() const { return nodes.at(root); }

    // Walks up to the nearest non-synthetic ancestor; diagnostics always
    // anchor there so anonymous nodes stay out of reports.
    std::string named_ancestor(const std::string& id) const {
        std::string cur = id;
        for (;;) {
            auto it = nodes.find(cur);
            if (it == nodes.end() || !it->second.synthetic) return cur;
            cur = it->second.parent;
        }
    }
};

struct Resolution {
    enum class Kind { kNode, kDanglingExternal, kMissing };
    Kind kind;
    const Node* node = nullptr;
};

inline std::string iri_base(std::string_view iri) {
    auto hash = iri.find('#');
    return std::string(hash == std::string_view::npos ? iri : iri.substr(0, hash));
}

// In-document definitions win; otherwise a reference sharing a pre-'#' base
// with some defined id is a local omission (missing), anything else is a
// legal external IRI.
inline Resolution resolve(const NodeGraph& graph, const std::string& id) {
    auto it = graph.nodes.find(id);
    if (it != graph.nodes.end()) return {Resolution::Kind::kNode, &it->second};
    if (graph.defined_bases.count(iri_base(id))) return {Resolution::Kind::kMissing, nullptr};
    return {Resolution::Kind::kDanglingExternal, nullptr};
}

// Declared types plus their superclass closure. Types the ontology does not
// declare contribute only themselves.
inline std::set<std::string> effective_types(const NodeGraph& graph, const Ontology& ont,
                                             const std::string& id) {
    auto res = resolve(graph, id);
    if (res.kind != Resolution::Kind::kNode)
        throw GraphError("no node " + id + " in " + graph.source_name);
    std::set<std::string> out = res.node->types;
    for (const auto& t : res.node->types) {
        auto closure = ont.superclass_closure(t);
        out.insert(closure.begin(), closure.end());
    }
    return out;
}

namespace detail {

// Properties holding one scalar: a second, different value is kept out and
// reported as X2 instead of merged.
inline bool is_scalar_property(const std::string& iri) {
    static const std::set<std::string> kScalar = {sc("name"), sc("description"), cr("dataType"),
                                                  sc("valuePattern")};
    return kScalar.count(iri) != 0;
}

class Expander {
  public:
    Expander(const json& doc, std::string source_name) : doc_(doc) {
        graph_.source_name = std::move(source_name);
        graph_.context = builtin_doc_prefixes();
    }

    NodeGraph run() {
        if (!doc_.is_object())
            throw ExpandError(ExpandError::Kind::kBadRoot, "top level must be a JSON object");
        read_context();
        if (is_pure_reference(doc_))
            throw ExpandError(ExpandError::Kind::kBadRoot,
                              "root cannot be a pure @id reference");
        Value root = walk(doc_, "", "", 0, true);
        graph_.root = root.ref;
        if (graph_.nodes.at(graph_.root).types.empty())
            throw ExpandError(ExpandError::Kind::kBadRoot, "root must declare @type");
        for (const auto& [id, node] : graph_.nodes)
            if (!node.synthetic) graph_.defined_bases.insert(iri_base(id));
        sort_diagnostics(graph_.expansion_diagnostics);
        return std::move(graph_);
    }

  private:
    void read_context() {
        auto it = doc_.find("@context");
        if (it == doc_.end()) return;
        if (!it->is_object())
            throw ExpandError(ExpandError::Kind::kBadContext, "@context must be an object");
        for (const auto& [prefix, ns] : it->items()) {
            if (!ns.is_string())
                throw ExpandError(ExpandError::Kind::kBadContext,
                                  "@context entry '" + prefix + "' must map to a string");
            graph_.context.set(prefix, ns.get<std::string>());
        }
    }

    static bool is_pure_reference(const json& obj) {
        return obj.is_object() && obj.contains("@id") && obj.size() == 1;
    }

    std::string expand_term(const std::string& term, const char* what) {
        auto iri = graph_.context.expand(term);
        if (!iri)
            throw ExpandError(ExpandError::Kind::kBadTerm,
                              std::string(what) + " '" + term + "' does not expand to an IRI");
        return *iri;
    }

    // Property keys are held to a stricter rule than @id values: a compact
    // form whose prefix is undeclared is a typo, not a URI scheme. Full URLs
    // (scheme followed by "//") still pass through unchanged.
    std::string expand_key(const std::string& key) {
        auto colon = key.find(':');
        if (colon != std::string::npos && key.find("://") == std::string::npos &&
            !graph_.context.has(key.substr(0, colon)))
            throw ExpandError(ExpandError::Kind::kBadTerm,
                              "key '" + key + "' uses an undeclared prefix");
        return expand_term(key, "key");
    }

    std::string expand_id(const json& v) {
        if (!v.is_string())
            throw ExpandError(ExpandError::Kind::kBadTerm, "@id must be a string");
        return expand_term(v.get<std::string>(), "@id");
    }

    std::set<std::string> expand_types(const json& obj) {
        std::set<std::string> out;
        auto it = obj.find("@type");
        if (it == obj.end()) return out;
        auto one = [&](const json& t) {
            if (!t.is_string())
                throw ExpandError(ExpandError::Kind::kBadTerm, "@type must be a string");
            out.insert(expand_term(t.get<std::string>(), "@type"));
        };
        if (it->is_array())
            for (const auto& t : *it) one(t);
        else
            one(*it);
        return out;
    }

    Node& ensure_node(const std::string& id, bool synthetic, const std::string& parent,
                      const std::string& parent_prop, std::set<std::string> types) {
        auto [it, inserted] = graph_.nodes.try_emplace(id);
        Node& n = it->second;
        if (inserted) {
            n.id = id;
            n.synthetic = synthetic;
            n.parent = parent;
            n.parent_prop = parent_prop;
            n.types = std::move(types);
            return n;
        }
        if (!types.empty()) {
            if (!n.types.empty() && n.types != types)
                throw ExpandError(ExpandError::Kind::kTypeConflict,
                                  "conflicting @type declarations for " + id);
            n.types.insert(types.begin(), types.end());
        }
        return n;
    }

    void add_value(Node& node, const std::string& prop, Value v) {
        auto& list = node.props[prop];
        for (const auto& existing : list)
            if (existing == v) return;
        if (is_scalar_property(prop) && !list.empty()) {
            Diagnostic d;
            d.code = "X2";
            d.focus = graph_.named_ancestor(node.id);
            d.property = prop;
            d.severity = Severity::kViolation;
            d.message = "conflicting values for " + graph_.context.compact(prop) + " on " +
                        graph_.context.compact(node.id) + "; keeping the first";
            graph_.expansion_diagnostics.push_back(std::move(d));
            return;
        }
        list.push_back(std::move(v));
    }

    Value value_from(const json& element, const std::string& owner, const std::string& prop,
                     size_t index) {
        if (element.is_object()) return walk(element, owner, prop, index, false);
        if (element.is_array())
            throw ExpandError(ExpandError::Kind::kBadTerm,
                              "nested arrays are not supported (property " + prop + ")");
        if (element.is_null())
            throw ExpandError(ExpandError::Kind::kBadTerm,
                              "null is not a legal value (property " + prop + ")");
        // Datatype designators written as plain strings are IRIs.
        if (prop == cr("dataType") && element.is_string()) {
            auto iri = graph_.context.expand(element.get<std::string>());
            if (iri) return Value::make_ref(*iri);
        }
        return Value::make_literal(element);
    }

    Value walk(const json& obj, const std::string& parent, const std::string& parent_prop,
               size_t index, bool is_root) {
        if (!is_root && obj.contains("@context"))
            throw ExpandError(ExpandError::Kind::kBadContext,
                              "@context is only supported on the root object");
        if (is_pure_reference(obj)) return Value::make_ref(expand_id(obj.at("@id")));

        bool synthetic = !obj.contains("@id");
        std::string id = synthetic ? "urn:x-anon:" + parent + "|" + iri_local_name(parent_prop) +
                                         "|" + std::to_string(index)
                                   : expand_id(obj.at("@id"));
        std::string node_id =
            ensure_node(id, synthetic, parent, parent_prop, expand_types(obj)).id;

        for (const auto& [key, value] : obj.items()) {
            if (key == "@context" || key == "@id" || key == "@type") continue;
            if (!key.empty() && key[0] == '@')
                throw ExpandError(ExpandError::Kind::kBadTerm,
                                  "unsupported keyword '" + key + "'");
            std::string prop = expand_key(key);
            if (value.is_array()) {
                size_t j = 0;
                for (const auto& element : value) {
                    Value v = value_from(element, node_id, prop, j++);
                    add_value(graph_.nodes.at(node_id), prop, std::move(v));
                }
            } else {
                Value v = value_from(value, node_id, prop, 0);
                add_value(graph_.nodes.at(node_id), prop, std::move(v));
            }
        }
        return Value::make_ref(node_id);
    }

    const json& doc_;
    NodeGraph graph_;
};

}  // namespace detail

// Expands one document under the scoped JSON-LD profile: inline @context
// prefix maps over the built-in prefixes, @type, @id, nothing else. Repeated
// @ids merge; hard structural faults throw ExpandError.
inline NodeGraph expand_document(std::string_view text, std::string source_name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ExpandError(ExpandError::Kind::kJsonSyntax, e.what());
    }
    detail::Expander expander(doc, std::move(source_name));
    return expander.run();
}

namespace detail {

class CanonicalWriter {
  public:
    explicit CanonicalWriter(const NodeGraph& graph) : graph_(graph) {}

    std::string write() {
        json body = render_node(graph_.root);
        json out;
        json ctx;
        for (const auto& prefix : used_prefixes_)
            ctx[prefix] = *graph_.context.expand(prefix + ":");
        out["@context"] = std::move(ctx);
        for (auto& [k, v] : body.items()) out[k] = std::move(v);
        return out.dump(2) + "\n";
    }

  private:
    std::string compact(const std::string& iri) {
        std::string c = graph_.context.compact(iri);
        auto colon = c.find(':');
        if (c != iri && colon != std::string::npos) used_prefixes_.insert(c.substr(0, colon));
        return c;
    }

    json ref_object(const std::string& iri) {
        json o;
        o["@id"] = compact(iri);
        return o;
    }

    json render_value(const std::string& prop, const Value& v) {
        if (!v.is_ref()) return v.literal;
        if (prop == cr("dataType")) return compact(v.ref);
        auto it = graph_.nodes.find(v.ref);
        if (it == graph_.nodes.end()) return ref_object(v.ref);
        if (it->second.synthetic || !emitted_.count(v.ref)) return render_node(v.ref);
        return ref_object(v.ref);
    }

    // Full body at first encounter in the traversal, bare reference after.
    // Entry is marked before children so cycles fall back to references.
    json render_node(const std::string& id) {
        emitted_.insert(id);
        const Node& node = graph_.nodes.at(id);
        json obj;
        if (!node.synthetic) obj["@id"] = compact(id);
        if (!node.types.empty()) {
            std::vector<std::string> types;
            for (const auto& t : node.types) types.push_back(compact(t));
            std::sort(types.begin(), types.end());
            if (types.size() == 1)
                obj["@type"] = types[0];
            else
                obj["@type"] = types;
        }
        std::vector<std::pair<std::string, const std::vector<Value>*>> props;
        for (const auto& [iri, values] : node.props) props.emplace_back(compact(iri), &values);
        std::sort(props.begin(), props.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [key, values] : props) {
            std::string iri = *graph_.context.expand(key);
            if (values->size() == 1) {
                obj[key] = render_value(iri, (*values)[0]);
            } else {
                json arr = json::array();
                for (const auto& v : *values) arr.push_back(render_value(iri, v));
                obj[key] = std::move(arr);
            }
        }
        return obj;
    }

    const NodeGraph& graph_;
    std::set<std::string> emitted_;
    std::set<std::string> used_prefixes_;
};

}  // namespace detail

// Deterministic serialization: @context first (used prefixes only), @id,
// @type, then properties sorted by compacted key; shared named nodes are
// defined at first encounter and referenced afterwards; anonymous nodes are
// always inlined. Re-expanding yields an isomorphic graph.
inline std::string canonical_json(const NodeGraph& graph) {
    return detail::CanonicalWriter(graph).write();
}

}  // namespace crtasks
