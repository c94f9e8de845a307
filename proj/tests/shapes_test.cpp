#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "crtasks/shapes.hpp"
#include "mutants.hpp"

namespace {

using namespace crtasks;
using testsupport::read_fixture;

FileVerdict validate_text(const std::string& text, const std::string& name = "doc") {
    NodeGraph g = expand_document(text, name);
    return validate_graph(g, builtin_ontology());
}

TEST(Shapes, GoldenFixturesAreClean) {
    for (const char* name : {testsupport::kTaskFixture, testsupport::kProblemFixture,
                             testsupport::kSolutionFixture}) {
        FileVerdict v = validate_text(read_fixture(name), name);
        EXPECT_TRUE(v.json_valid) << name;
        EXPECT_TRUE(v.conforms) << name;
        EXPECT_TRUE(v.diagnostics.empty())
            << name << ":\n"
            << render_text(v);
        EXPECT_TRUE(v.pass()) << name;
    }
}

TEST(Shapes, EachMutantTripsExactlyItsConstraint) {
    for (const auto& m : testsupport::mutants()) {
        FileVerdict v = validate_text(testsupport::mutated_text(m), m.code);
        ASSERT_EQ(v.diagnostics.size(), 1u)
            << m.code << ":\n"
            << render_text(v);
        const Diagnostic& d = v.diagnostics[0];
        EXPECT_EQ(d.code, m.code);
        EXPECT_EQ(d.severity, Severity::kViolation) << m.code;
        EXPECT_EQ(d.focus, m.focus) << m.code;
        EXPECT_FALSE(v.conforms) << m.code;
    }
}

TEST(Shapes, CatalogCoversEveryMutant) {
    const ShapeSet& shapes = builtin_shapes();
    for (const auto& m : testsupport::mutants())
        EXPECT_NE(shapes.find(m.code), nullptr) << m.code;
    EXPECT_EQ(shapes.catalog.size(), 18u);  // 17 violations + S2x warning
    EXPECT_THROW((void)shapes.message("nope"), std::out_of_range);
}

TEST(Shapes, UntypedReferencedNodeWarnsOnce) {
    FileVerdict v = validate_text(R"({
      "@context": {"ex": "http://example.org/"},
      "@id": "ex:t", "@type": "cr:Task",
      "sc:name": "t",
      "cr:subTask": [{"@id": "ex:u", "sc:name": "untyped child"}],
      "cr:output": {"@id": "ex:u"}
    })");
    ASSERT_EQ(v.diagnostics.size(), 1u) << render_text(v);
    const Diagnostic& d = v.diagnostics[0];
    EXPECT_EQ(d.code, "W1");
    EXPECT_EQ(d.severity, Severity::kWarning);
    EXPECT_EQ(d.focus, "ex:u");
    EXPECT_EQ(d.property, "cr:output");
    EXPECT_TRUE(v.conforms);
}

TEST(Shapes, ExternalTargetsWarnOnlyWhereUnverifiable) {
    // croissant:output does not admit URL values, so the link is suspect.
    FileVerdict warned = validate_text(R"({
      "@context": {"ex": "http://example.org/"},
      "@id": "ex:t", "@type": "cr:Task",
      "cr:output": {"@id": "https://example.com/artifact"}
    })");
    ASSERT_EQ(warned.diagnostics.size(), 1u) << render_text(warned);
    EXPECT_EQ(warned.diagnostics[0].code, "W2");
    EXPECT_EQ(warned.diagnostics[0].severity, Severity::kWarning);
    EXPECT_TRUE(warned.conforms);

    // croissant:input admits URLs, so an external reference is legitimate.
    FileVerdict clean = validate_text(R"({
      "@context": {"ex": "http://example.org/"},
      "@id": "ex:t", "@type": "cr:Task",
      "cr:input": {"@id": "https://example.com/data"}
    })");
    EXPECT_TRUE(clean.diagnostics.empty()) << render_text(clean);
}

TEST(Shapes, SolutionExecutionSpecIsOnlyAWarning) {
    FileVerdict v = validate_text(R"({
      "@context": {"ex": "http://example.org/"},
      "@id": "ex:s", "@type": "cr:TaskSolution",
      "sc:isBasedOn": {"@id": "ex:p"},
      "cr:implementation": {"@id": "ex:impl", "@type": "sc:SoftwareApplication",
                             "sc:name": "i"},
      "cr:execution": {"@id": "ex:e", "@type": "cr:ExecutionSpec"}
    })");
    ASSERT_EQ(v.diagnostics.size(), 1u) << render_text(v);
    EXPECT_EQ(v.diagnostics[0].code, "S2x");
    EXPECT_EQ(v.diagnostics[0].severity, Severity::kWarning);
    EXPECT_TRUE(v.conforms);
}

TEST(Shapes, SolutionSpecTypedComponentViolates) {
    // The concrete implementation keeps the has-an-implementation rule
    // satisfied, so only the ImplementationSpec value is at fault.
    FileVerdict v = validate_text(R"({
      "@context": {"ex": "http://example.org/"},
      "@id": "ex:s", "@type": "cr:TaskSolution",
      "sc:isBasedOn": {"@id": "ex:p"},
      "cr:implementation": [
        {"@id": "ex:runner", "@type": "sc:SoftwareApplication", "sc:name": "runner"},
        {"@id": "ex:impl", "@type": "cr:ImplementationSpec", "sc:name": "i"}
      ]
    })");
    ASSERT_EQ(v.diagnostics.size(), 1u) << render_text(v);
    EXPECT_EQ(v.diagnostics[0].code, "S2");
    EXPECT_EQ(v.diagnostics[0].severity, Severity::kViolation);
    EXPECT_FALSE(v.conforms);
}

TEST(Shapes, EvaluatedSolutionCardinality) {
    // A free-standing evaluation task may omit the back-reference.
    FileVerdict standalone = validate_text(R"({
      "@context": {"ex": "http://example.org/"},
      "@id": "ex:ev", "@type": "cr:EvaluationTask", "sc:name": "ev"
    })");
    EXPECT_TRUE(standalone.diagnostics.empty()) << render_text(standalone);

    // Once a solution claims it as its evaluation, the back-reference is due.
    FileVerdict claimed = validate_text(R"({
      "@context": {"ex": "http://example.org/"},
      "@id": "ex:s", "@type": "cr:TaskSolution",
      "sc:isBasedOn": {"@id": "ex:p"},
      "cr:implementation": {"@id": "ex:impl", "@type": "sc:SoftwareApplication"},
      "cr:evaluation": {"@id": "ex:ev", "@type": "cr:EvaluationTask"}
    })");
    ASSERT_EQ(claimed.diagnostics.size(), 1u) << render_text(claimed);
    EXPECT_EQ(claimed.diagnostics[0].code, "E2");
    EXPECT_EQ(claimed.diagnostics[0].focus, "ex:ev");
    EXPECT_FALSE(claimed.conforms);

    // More than one back-reference is ambiguous wherever it appears.
    FileVerdict doubled = validate_text(R"({
      "@context": {"ex": "http://example.org/"},
      "@id": "ex:ev", "@type": "cr:EvaluationTask",
      "cr:evaluatedSolution": [{"@id": "ex:a"}, {"@id": "ex:b"}]
    })");
    EXPECT_EQ(violation_count(doubled.diagnostics), 1u) << render_text(doubled);
    bool saw_e2 = false;
    for (const auto& d : doubled.diagnostics)
        if (d.code == "E2" && d.severity == Severity::kViolation) saw_e2 = true;
    EXPECT_TRUE(saw_e2);
    EXPECT_FALSE(doubled.conforms);
}

TEST(Shapes, NestedOnlyImplementationIsAWarning) {
    FileVerdict v = validate_text(R"({
      "@context": {"ex": "http://example.org/"},
      "@id": "ex:s", "@type": "cr:TaskSolution",
      "sc:isBasedOn": {"@id": "ex:p"},
      "cr:subTask": [
        {"@id": "ex:s1", "@type": "cr:TaskSolution",
         "sc:isBasedOn": {"@id": "ex:p1"},
         "cr:subTask": [
           {"@id": "ex:s11", "@type": "cr:TaskSolution",
            "sc:isBasedOn": {"@id": "ex:p11"},
            "cr:implementation": {"@id": "ex:impl",
                                   "@type": "sc:SoftwareApplication"}}
         ]}
      ]
    })");
    ASSERT_EQ(v.diagnostics.size(), 1u) << render_text(v);
    EXPECT_EQ(v.diagnostics[0].code, "W3");
    EXPECT_EQ(v.diagnostics[0].severity, Severity::kWarning);
    EXPECT_EQ(v.diagnostics[0].focus, "ex:s");
    EXPECT_TRUE(v.conforms);
}

TEST(Shapes, ExpansionConflictsSurfaceAsViolations) {
    FileVerdict v = validate_text(R"({
      "@context": {"ex": "http://example.org/"},
      "@id": "ex:a", "@type": "cr:Task",
      "cr:subTask": [
        {"@id": "ex:b", "@type": "cr:Task", "sc:name": "one"},
        {"@id": "ex:b", "sc:name": "two"}
      ]
    })");
    ASSERT_EQ(v.diagnostics.size(), 1u) << render_text(v);
    EXPECT_EQ(v.diagnostics[0].code, "X2");
    EXPECT_EQ(v.diagnostics[0].focus, "ex:b");
    EXPECT_FALSE(v.conforms);
}

TEST(Shapes, ConformanceTracksViolationsNotWarnings) {
    std::vector<std::string> docs = {
        read_fixture(testsupport::kTaskFixture),
        read_fixture(testsupport::kProblemFixture),
        read_fixture(testsupport::kSolutionFixture),
    };
    for (const auto& m : testsupport::mutants()) docs.push_back(testsupport::mutated_text(m));
    for (const auto& text : docs) {
        FileVerdict v = validate_text(text);
        EXPECT_EQ(v.conforms, violation_count(v.diagnostics) == 0);
    }
}

TEST(Shapes, RenderTextFormat) {
    FileVerdict v;
    v.source_name = "doc";
    v.json_valid = true;
    v.conforms = false;
    Diagnostic d1;
    d1.code = "S1";
    d1.focus = "ex:s";
    d1.severity = Severity::kViolation;
    d1.message = "missing link";
    Diagnostic d2;
    d2.code = "W2";
    d2.focus = "ex:t";
    d2.property = "cr:output";
    d2.severity = Severity::kWarning;
    d2.message = "external target";
    v.diagnostics = {d1, d2};
    EXPECT_EQ(render_text(v),
              "VIOLATION S1 ex:s - \xE2\x80\x94 missing link\n"
              "WARNING W2 ex:t cr:output \xE2\x80\x94 external target\n"
              "FAIL (1 violation)\n");

    v.conforms = true;
    v.diagnostics = {d2};
    EXPECT_EQ(render_text(v),
              "WARNING W2 ex:t cr:output \xE2\x80\x94 external target\n"
              "PASS\n");

    v.conforms = false;
    v.diagnostics = {d1, d1};
    EXPECT_EQ(render_text(v),
              "VIOLATION S1 ex:s - \xE2\x80\x94 missing link\n"
              "VIOLATION S1 ex:s - \xE2\x80\x94 missing link\n"
              "FAIL (2 violations)\n");
}

}  // namespace
