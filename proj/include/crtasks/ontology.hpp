#pragma once
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crtasks/iri.hpp"

namespace crtasks {

// Position-reporting parse failure for the Turtle subset.
struct TurtleError : std::runtime_error {
    TurtleError(size_t line, size_t col, const std::string& what)
        : std::runtime_error("turtle:" + std::to_string(line) + ":" + std::to_string(col) +
                             ": " + what),
          line(line),
          col(col) {}
    size_t line;
    size_t col;
};

// Lookup against an unknown class or property.
struct OntologyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OntClass {
    std::string id;
    std::string label;
    std::string comment;
    std::vector<std::string> superclasses;  // sorted, unique

    bool operator==(const OntClass&) const = default;
};

struct OntProperty {
    std::string id;
    std::string label;
    std::string comment;
    std::set<std::string> domains;
    std::set<std::string> ranges;
    // False for properties extended with domain/range statements but never
    // declared via "a rdf:Property" (schema:isBasedOn).
    bool declared = true;

    bool operator==(const OntProperty&) const = default;
};

class Ontology {
  public:
    std::map<std::string, OntClass> classes;
    std::map<std::string, OntProperty> properties;
    PrefixTable prefixes;

    bool has_class(const std::string& iri) const { return classes.count(iri) != 0; }

    size_t declared_property_count() const {
        size_t n = 0;
        for (const auto& [id, p] : properties) n += p.declared ? 1 : 0;
        return n;
    }

    // Reflexive-transitive closure over superclass edges. Undeclared
    // superclasses (schema.org classes) are opaque leaves.
    bool is_subclass_of(const std::string& sub, const std::string& ancestor) const {
        if (!has_class(sub)) throw OntologyError("unknown class: " + sub);
        std::set<std::string> seen;
        std::vector<std::string> stack{sub};
        while (!stack.empty()) {
            std::string cur = stack.back();
            stack.pop_back();
            if (cur == ancestor) return true;
            if (!seen.insert(cur).second) continue;
            auto it = classes.find(cur);
            if (it == classes.end()) continue;
            for (const auto& super : it->second.superclasses) stack.push_back(super);
        }
        return false;
    }

    // All ancestors of a declared class, excluding the class itself.
    std::set<std::string> superclass_closure(const std::string& cls) const {
        std::set<std::string> out;
        auto it = classes.find(cls);
        if (it == classes.end()) return out;
        std::vector<std::string> stack(it->second.superclasses.begin(),
                                       it->second.superclasses.end());
        while (!stack.empty()) {
            std::string cur = stack.back();
            stack.pop_back();
            if (!out.insert(cur).second) continue;
            auto cit = classes.find(cur);
            if (cit == classes.end()) continue;
            for (const auto& super : cit->second.superclasses) stack.push_back(super);
        }
        return out;
    }

    const std::set<std::string>& property_ranges(const std::string& prop) const {
        auto it = properties.find(prop);
        if (it == properties.end()) throw OntologyError("unknown property: " + prop);
        return it->second.ranges;
    }

    bool operator==(const Ontology&) const = default;
};

namespace detail {

struct TurtleTriple {
    std::string subject;
    std::string predicate;
    bool object_is_iri = false;
    std::string object;
};

class TurtleLexer {
  public:
    enum class Tok { kEof, kDot, kSemicolon, kComma, kAt, kName, kIriRef, kString };

    explicit TurtleLexer(std::string_view text) : text_(text) {}

    Tok next() {
        skip_ws_and_comments();
        tok_line_ = line_;
        tok_col_ = col_;
        if (pos_ >= text_.size()) return Tok::kEof;
        char c = text_[pos_];
        switch (c) {
            case '.': advance(); return Tok::kDot;
            case ';': advance(); return Tok::kSemicolon;
            case ',': advance(); return Tok::kComma;
            case '@': advance(); return Tok::kAt;
            case '<': return lex_iriref();
            case '"': return lex_string();
            case '[': case ']': fail("blank nodes are not supported");
            case '(': case ')': fail("collections are not supported");
            default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_name();
        fail(std::string("unsupported token '") + c + "'");
    }

    const std::string& value() const { return value_; }
    size_t line() const { return tok_line_; }
    size_t col() const { return tok_col_; }

    [[noreturn]] void fail(const std::string& msg) const { throw TurtleError(tok_line_, tok_col_, msg); }

  private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Tok lex_iriref() {
        advance();  // '<'
        value_.clear();
        while (pos_ < text_.size() && text_[pos_] != '>') {
            if (text_[pos_] == '\n') fail("unterminated IRI");
            value_ += text_[pos_];
            advance();
        }
        if (pos_ >= text_.size()) fail("unterminated IRI");
        advance();  // '>'
        return Tok::kIriRef;
    }

    Tok lex_string() {
        advance();  // '"'
        value_.clear();
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '"') {
                advance();
                return Tok::kString;
            }
            if (c == '\n') fail("unterminated string");
            if (c == '\\') {
                advance();
                if (pos_ >= text_.size()) fail("unterminated string");
                char esc = text_[pos_];
                if (esc == '"') value_ += '"';
                else if (esc == '\\') value_ += '\\';
                else if (esc == 'n') value_ += '\n';
                else if (esc == 't') value_ += '\t';
                else fail(std::string("unsupported string escape '\\") + esc + "'");
                advance();
                continue;
            }
            value_ += c;
            advance();
        }
        fail("unterminated string");
    }

    // Names cover keywords ("a", "prefix"), prefixed names ("croissant:Task")
    // and bare prefix declarations ("rdf:"). Dots never occur inside names in
    // this subset, so '.' always terminates a statement.
    Tok lex_name() {
        value_.clear();
        auto name_char = [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
        };
        while (pos_ < text_.size() && name_char(text_[pos_])) {
            value_ += text_[pos_];
            advance();
        }
        if (pos_ < text_.size() && text_[pos_] == ':') {
            value_ += ':';
            advance();
            while (pos_ < text_.size() && name_char(text_[pos_])) {
                value_ += text_[pos_];
                advance();
            }
        }
        return Tok::kName;
    }

    std::string_view text_;
    size_t pos_ = 0;
    size_t line_ = 1;
    size_t col_ = 1;
    size_t tok_line_ = 1;
    size_t tok_col_ = 1;
    std::string value_;
};

class TurtleParser {
  public:
    explicit TurtleParser(std::string_view text) : lexer_(text) {}

    void parse() {
        for (;;) {
            tok_ = lexer_.next();
            if (tok_ == TurtleLexer::Tok::kEof) return;
            if (tok_ == TurtleLexer::Tok::kAt) {
                parse_directive();
            } else {
                parse_statement();
            }
        }
    }

    const std::vector<TurtleTriple>& triples() const { return triples_; }
    const PrefixTable& prefixes() const { return prefixes_; }

  private:
    void expect(TurtleLexer::Tok t, const char* what) {
        tok_ = lexer_.next();
        if (tok_ != t) lexer_.fail(std::string("expected ") + what);
    }

    std::string expand_name(const std::string& name) {
        auto colon = name.find(':');
        if (colon == std::string::npos) lexer_.fail("expected a prefixed name or IRI");
        std::string prefix = name.substr(0, colon);
        if (!prefixes_.has(prefix)) lexer_.fail("unknown prefix '" + prefix + "'");
        return *prefixes_.expand(name);
    }

    void parse_directive() {
        expect(TurtleLexer::Tok::kName, "'prefix'");
        if (lexer_.value() != "prefix") lexer_.fail("unsupported directive '@" + lexer_.value() + "'");
        expect(TurtleLexer::Tok::kName, "a prefix name");
        std::string decl = lexer_.value();
        if (decl.empty() || decl.back() != ':') lexer_.fail("prefix name must end with ':'");
        std::string prefix = decl.substr(0, decl.size() - 1);
        expect(TurtleLexer::Tok::kIriRef, "a namespace IRI");
        std::string ns = lexer_.value();
        if (prefixes_.has(prefix) && *prefixes_.expand(prefix + ":") != ns)
            lexer_.fail("conflicting redeclaration of prefix '" + prefix + "'");
        prefixes_.set(prefix, ns);
        expect(TurtleLexer::Tok::kDot, "'.'");
    }

    std::string parse_resource_from_current() {
        if (tok_ == TurtleLexer::Tok::kIriRef) return lexer_.value();
        if (tok_ == TurtleLexer::Tok::kName) return expand_name(lexer_.value());
        lexer_.fail("expected a resource");
    }

    void parse_statement() {
        std::string subject = parse_resource_from_current();
        for (;;) {
            tok_ = lexer_.next();
            std::string predicate;
            if (tok_ == TurtleLexer::Tok::kName && lexer_.value() == "a") {
                predicate = kRdfNs + "type";
            } else {
                predicate = parse_resource_from_current();
            }
            for (;;) {
                tok_ = lexer_.next();
                TurtleTriple t;
                t.subject = subject;
                t.predicate = predicate;
                if (tok_ == TurtleLexer::Tok::kString) {
                    t.object = lexer_.value();
                } else {
                    t.object_is_iri = true;
                    t.object = parse_resource_from_current();
                }
                triples_.push_back(std::move(t));
                tok_ = lexer_.next();
                if (tok_ == TurtleLexer::Tok::kComma) continue;
                break;
            }
            if (tok_ == TurtleLexer::Tok::kSemicolon) continue;
            if (tok_ == TurtleLexer::Tok::kDot) return;
            lexer_.fail("expected ',', ';' or '.' after object");
        }
    }

    TurtleLexer lexer_;
    TurtleLexer::Tok tok_ = TurtleLexer::Tok::kEof;
    PrefixTable prefixes_;
    std::vector<TurtleTriple> triples_;
};

inline void check_subclass_acyclic(const Ontology& ont) {
    // 0 unvisited, 1 on stack, 2 done
    std::map<std::string, int> color;
    struct Frame {
        std::string id;
        size_t next = 0;
    };
    for (const auto& [start, cls] : ont.classes) {
        if (color[start] != 0) continue;
        std::vector<Frame> stack{{start}};
        color[start] = 1;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto* c = &ont.classes.at(f.id);
            if (f.next >= c->superclasses.size()) {
                color[f.id] = 2;
                stack.pop_back();
                continue;
            }
            std::string super = c->superclasses[f.next++];
            if (!ont.classes.count(super)) continue;  // external leaf
            int& col = color[super];
            if (col == 1) throw TurtleError(0, 0, "subclass cycle through " + super);
            if (col == 0) {
                col = 1;
                stack.push_back({super});
            }
        }
    }
}

}  // namespace detail

// Parses the Turtle subset used by the vocabulary: @prefix directives,
// subject-predicate-object statements with ';'/',' lists, 'a' shorthand,
// single-line string literals and '#' comments. Anything else is a
// position-reporting error.
inline Ontology parse_ontology(std::string_view text) {
    detail::TurtleParser parser(text);
    parser.parse();

    Ontology ont;
    ont.prefixes = parser.prefixes();

    const std::string rdf_type = kRdfNs + "type";
    const std::string rdf_class = kRdfNs + "Class";
    const std::string rdf_property = kRdfNs + "Property";
    const std::string rdfs_label = kRdfsNs + "label";
    const std::string rdfs_comment = kRdfsNs + "comment";
    const std::string rdfs_subclassof = kRdfsNs + "subClassOf";
    const std::string domain_includes = sc("domainIncludes");
    const std::string range_includes = sc("rangeIncludes");

    struct Agg {
        bool is_class = false;
        bool is_property = false;
        std::string label;
        std::string comment;
        std::set<std::string> superclasses;
        std::set<std::string> domains;
        std::set<std::string> ranges;
    };
    std::map<std::string, Agg> subjects;
    for (const auto& t : parser.triples()) {
        Agg& agg = subjects[t.subject];
        if (t.predicate == rdf_type && t.object_is_iri) {
            if (t.object == rdf_class) agg.is_class = true;
            else if (t.object == rdf_property) agg.is_property = true;
            else throw TurtleError(0, 0, t.subject + " declared with unsupported type " + t.object);
        } else if (t.predicate == rdfs_label && !t.object_is_iri) {
            agg.label = t.object;
        } else if (t.predicate == rdfs_comment && !t.object_is_iri) {
            agg.comment = t.object;
        } else if (t.predicate == rdfs_subclassof && t.object_is_iri) {
            agg.superclasses.insert(t.object);
        } else if (t.predicate == domain_includes && t.object_is_iri) {
            agg.domains.insert(t.object);
        } else if (t.predicate == range_includes && t.object_is_iri) {
            agg.ranges.insert(t.object);
        } else {
            throw TurtleError(0, 0, "unsupported predicate " + t.predicate + " on " + t.subject);
        }
    }

    for (auto& [id, agg] : subjects) {
        if (agg.is_class && agg.is_property)
            throw TurtleError(0, 0, id + " declared as both a class and a property");
        if (agg.is_class) {
            OntClass c;
            c.id = id;
            c.label = agg.label;
            c.comment = agg.comment;
            c.superclasses.assign(agg.superclasses.begin(), agg.superclasses.end());
            ont.classes.emplace(id, std::move(c));
            continue;
        }
        if (agg.is_property || !agg.domains.empty() || !agg.ranges.empty()) {
            OntProperty p;
            p.id = id;
            p.label = agg.label;
            p.comment = agg.comment;
            p.domains = agg.domains;
            p.ranges = agg.ranges;
            p.declared = agg.is_property;
            ont.properties.emplace(id, std::move(p));
            continue;
        }
        throw TurtleError(0, 0, id + " declares neither a class nor a property");
    }

    detail::check_subclass_acyclic(ont);
    return ont;
}

// Deterministic serialization back into the same subset. Undeclared
// properties keep their undeclared form (no "a rdf:Property" line), so
// parse(to_turtle(ont)) == ont.
inline std::string to_turtle(const Ontology& ont) {
    std::ostringstream out;
    auto escape = [](const std::string& s) {
        std::string r;
        for (char c : s) {
            if (c == '\\' || c == '"') r += '\\';
            r += c;
        }
        return r;
    };
    auto compact = [&](const std::string& iri) { return ont.prefixes.compact(iri); };

    for (const auto& [prefix, ns] : ont.prefixes.entries())
        out << "@prefix " << prefix << ": <" << ns << "> .\n";

    for (const auto& [id, c] : ont.classes) {
        out << "\n" << compact(id) << " a rdf:Class ;\n";
        out << "  rdfs:label \"" << escape(c.label) << "\" ;\n";
        out << "  rdfs:comment \"" << escape(c.comment) << "\"";
        if (!c.superclasses.empty()) {
            out << " ;\n  rdfs:subClassOf ";
            for (size_t i = 0; i < c.superclasses.size(); ++i)
                out << (i ? ", " : "") << compact(c.superclasses[i]);
        }
        out << " .\n";
    }

    for (const auto& [id, p] : ont.properties) {
        out << "\n" << compact(id);
        bool first = true;
        auto sep = [&]() -> std::ostream& {
            out << (first ? " " : " ;\n  ");
            first = false;
            return out;
        };
        if (p.declared) sep() << "a rdf:Property";
        if (!p.label.empty()) sep() << "rdfs:label \"" << escape(p.label) << "\"";
        if (!p.comment.empty()) sep() << "rdfs:comment \"" << escape(p.comment) << "\"";
        if (!p.domains.empty()) {
            sep() << "schema:domainIncludes ";
            size_t i = 0;
            for (const auto& d : p.domains) out << (i++ ? ", " : "") << compact(d);
        }
        if (!p.ranges.empty()) {
            sep() << "schema:rangeIncludes ";
            size_t i = 0;
            for (const auto& r : p.ranges) out << (i++ ? ", " : "") << compact(r);
        }
        out << " .\n";
    }
    return out.str();
}

// The Croissant Tasks vocabulary, embedded so the toolkit runs with no side
// files. Kept byte-identical to tests/fixtures/croissant-tasks.ttl.
inline std::string_view builtin_schema_text() {
    static const std::string_view kText = R"ttl(@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix schema: <https://schema.org/> .
@prefix croissant: <http://mlcommons.org/croissant/> .

# Top-level classes

croissant:Task a rdf:Class ;
  rdfs:label "Task" ;
  rdfs:comment "A generic task class for Croissant." ;
  rdfs:subClassOf schema:CreativeWork .

croissant:TaskProblem a rdf:Class ;
  rdfs:label "TaskProblem" ;
  rdfs:comment "A TaskProblem defines a 'problem' to be solved, i.e., an incomplete task. It uses a mix of concrete properties for components it provides ('givens') and Spec properties for components it expects a solution to provide. A TaskProblem inherits all properties from cr:Task. The role of each property is determined by the type of its value: Given Component: The property's value is a concrete type (e.g., cr:input is assigned a schema:Dataset). Expected Component: The property's value is a Spec type (e.g., cr:output is assigned a cr:OutputSpec)." ;
  rdfs:subClassOf croissant:Task .

croissant:TaskSolution a rdf:Class ;
  rdfs:label "TaskSolution" ;
  rdfs:comment "A TaskSolution represents a specific, concrete answer to a TaskProblem. It provides the actual values for the components that were marked as Specs in the problem definition. A TaskSolution inherits all properties from cr:Task to describe the concrete components of the solution." ;
  rdfs:subClassOf croissant:Task .

croissant:EvaluationTask a rdf:Class ;
  rdfs:label "EvaluationTask" ;
  rdfs:comment "A specialization of cr:Task that includes evaluation-specific information, such as metrics and results." ;
  rdfs:subClassOf croissant:Task .

croissant:EvaluationResult a rdf:Class ;
  rdfs:label "EvaluationResult" ;
  rdfs:comment "A structured result of an evaluation, pairing a metric with its value." .

# Task properties

croissant:input a rdf:Property ;
  rdfs:label "input" ;
  rdfs:comment "The primary data used as input for the task, typically provided as a Croissant dataset. This field can be repeated in case of multiple inputs." ;
  schema:domainIncludes croissant:Task ;
  schema:rangeIncludes croissant:Dataset, schema:Dataset, schema:URL, croissant:InputSpec .

croissant:output a rdf:Property ;
  rdfs:label "output" ;
  rdfs:comment "The data generated by completing the task, typically provided as a Croissant dataset. This field can be repeated in case of multiple output datasets." ;
  schema:domainIncludes croissant:Task ;
  schema:rangeIncludes schema:Dataset, schema:SoftwareSourceCode, croissant:OutputSpec .

croissant:implementation a rdf:Property ;
  rdfs:label "implementation" ;
  rdfs:comment "The specific program that executes the task. This can be source code, or an executable representation, such as a docker container." ;
  schema:domainIncludes croissant:Task ;
  schema:rangeIncludes schema:SoftwareApplication, schema:SoftwareSourceCode, croissant:ImplementationSpec .

croissant:execution a rdf:Property ;
  rdfs:label "execution" ;
  rdfs:comment "Information about the execution of the task." ;
  schema:domainIncludes croissant:Task ;
  schema:rangeIncludes croissant:ExecutionInfo, croissant:ExecutionSpec .

croissant:evaluation a rdf:Property ;
  rdfs:label "evaluation" ;
  rdfs:comment "The evaluation of the task, represented as another task." ;
  schema:domainIncludes croissant:Task ;
  schema:rangeIncludes croissant:EvaluationTask, croissant:EvaluationSpec .

croissant:subTask a rdf:Property ;
  rdfs:label "subTask" ;
  rdfs:comment "One or more subtasks that are part of the definition of this task." ;
  schema:domainIncludes croissant:Task ;
  schema:rangeIncludes croissant:Task .

# Evaluation properties

croissant:evaluationResults a rdf:Property ;
  rdfs:label "evaluationResults" ;
  rdfs:comment "The results of the evaluation, represented as instances of cr:EvaluationResult." ;
  schema:domainIncludes croissant:EvaluationTask ;
  schema:rangeIncludes croissant:EvaluationResult .

croissant:evaluatedSolution a rdf:Property ;
  rdfs:label "evaluatedSolution" ;
  rdfs:comment "The TaskSolution that was evaluated." ;
  schema:domainIncludes croissant:EvaluationTask ;
  schema:rangeIncludes croissant:TaskSolution .

croissant:metric a rdf:Property ;
  rdfs:label "metric" ;
  rdfs:comment "The metric used for a specific result." ;
  schema:domainIncludes croissant:EvaluationResult ;
  schema:rangeIncludes schema:Text, schema:URL .

croissant:expectedMetric a rdf:Property ;
  rdfs:label "expectedMetric" ;
  rdfs:comment "The metric expected to be calculated for this task." ;
  schema:domainIncludes croissant:EvaluationSpec ;
  schema:rangeIncludes schema:Text, schema:URL .

croissant:value a rdf:Property ;
  rdfs:label "value" ;
  rdfs:comment "The value of the result." ;
  schema:domainIncludes croissant:EvaluationResult ;
  schema:rangeIncludes schema:QuantitativeValue, schema:Text, schema:Number .

# Reusing schema:isBasedOn to link a TaskSolution or EvaluationTask to the TaskProblem it addresses.
schema:isBasedOn schema:domainIncludes croissant:TaskSolution, croissant:EvaluationTask ;
  schema:rangeIncludes schema:URL, croissant:TaskProblem ;
  rdfs:comment "A reference to the @id of the cr:TaskProblem that this solution or evaluation addresses." .

# Spec Classes

croissant:InputSpec a rdf:Class ;
  rdfs:label "InputSpec" ;
  rdfs:comment "Specifies the requirements for an input that a solution must provide. This is useful for 'bring your own data' style tasks." ;
  rdfs:subClassOf schema:Dataset .

croissant:OutputSpec a rdf:Class ;
  rdfs:label "OutputSpec" ;
  rdfs:comment "Specifies the requirements for the output that a solution must generate." ;
  rdfs:subClassOf schema:Dataset .

croissant:ImplementationSpec a rdf:Class ;
  rdfs:label "ImplementationSpec" ;
  rdfs:comment "Specifies the technical requirements for a solution's implementation (e.g., code, model)." ;
  rdfs:subClassOf schema:SoftwareApplication .

croissant:ExecutionSpec a rdf:Class ;
  rdfs:label "ExecutionSpec" ;
  rdfs:comment "A placeholder for execution information that has not yet been logged because an experiment has not yet been run." .

croissant:EvaluationSpec a rdf:Class ;
  rdfs:label "EvaluationSpec" ;
  rdfs:comment "A placeholder for evaluation metrics that have not been specified for that task." .

# Spec properties

croissant:schema a rdf:Property ;
  rdfs:label "schema" ;
  rdfs:comment "A formal Croissant schema (cr:RecordSet) defining the required structure of the dataset (input or output)." ;
  schema:domainIncludes croissant:InputSpec, croissant:OutputSpec ;
  schema:rangeIncludes croissant:RecordSet .

croissant:tests a rdf:Property ;
  rdfs:label "tests" ;
  rdfs:comment "A test or suite of tests (cr:Test or schema:URL) that the implementation must pass." ;
  schema:domainIncludes croissant:ImplementationSpec ;
  schema:rangeIncludes croissant:Test, schema:URL .

croissant:environment a rdf:Property ;
  rdfs:label "environment" ;
  rdfs:comment "A description of or link to the required execution environment (e.g., a requirements.txt file)." ;
  schema:domainIncludes croissant:ImplementationSpec ;
  schema:rangeIncludes schema:CreativeWork, schema:URL .

# Test Classes

croissant:Test a rdf:Class ;
  rdfs:label "Test" ;
  rdfs:comment "Represents a test or a test suite for verifying an implementation." .

# Test properties

croissant:testCommand a rdf:Property ;
  rdfs:label "testCommand" ;
  rdfs:comment "The command to execute the test." ;
  schema:domainIncludes croissant:Test ;
  schema:rangeIncludes schema:Text .

# Execution Classes

croissant:ExecutionInfo a rdf:Class ;
  rdfs:label "ExecutionInfo" ;
  rdfs:comment "Information about the execution of a task." .

croissant:ExecutionConfig a rdf:Class ;
  rdfs:label "ExecutionConfig" ;
  rdfs:comment "Configuration used for execution, such as hyperparameters." ;
  rdfs:subClassOf croissant:ExecutionInfo .

croissant:ExecutionTrace a rdf:Class ;
  rdfs:label "ExecutionTrace" ;
  rdfs:comment "Trace information from execution, such as logs and metrics." ;
  rdfs:subClassOf croissant:ExecutionInfo .

# Execution properties

croissant:hyperparameter a rdf:Property ;
  rdfs:label "hyperparameter" ;
  rdfs:comment "A hyperparameter used in the execution configuration." ;
  schema:domainIncludes croissant:ExecutionConfig ;
  schema:rangeIncludes schema:PropertyValue .

# External properties reused or formalized here

schema:valuePattern a rdf:Property ;
  rdfs:label "valuePattern" ;
  rdfs:comment "A regular expression pattern to validate field values." ;
  schema:domainIncludes croissant:Field ;
  schema:rangeIncludes schema:Text .
)ttl";
    return kText;
}

inline const Ontology& builtin_ontology() {
    static const Ontology ont = parse_ontology(builtin_schema_text());
    return ont;
}

}  // namespace crtasks
