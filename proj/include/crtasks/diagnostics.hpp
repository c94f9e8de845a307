#pragma once
#include <algorithm>
#include <string>
#include <vector>

namespace crtasks {

enum class Severity { kViolation, kWarning };

inline const char* severity_name(Severity s) {
    return s == Severity::kViolation ? "VIOLATION" : "WARNING";
}

// One finding against one node. Codes are stable and append-only; focus is
// always a non-synthetic node id (findings on anonymous nodes are reported at
// the nearest named ancestor, with the path kept in the message).
struct Diagnostic {
    std::string code;
    std::string focus;
    std::string property;  // expanded IRI, empty when not property-scoped
    Severity severity = Severity::kViolation;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

// Total order: (focus, code, property).
inline bool diagnostic_less(const Diagnostic& a, const Diagnostic& b) {
    if (a.focus != b.focus) return a.focus < b.focus;
    if (a.code != b.code) return a.code < b.code;
    return a.property < b.property;
}

inline void sort_diagnostics(std::vector<Diagnostic>& ds) {
    std::stable_sort(ds.begin(), ds.end(), diagnostic_less);
}

inline size_t violation_count(const std::vector<Diagnostic>& ds) {
    return std::count_if(ds.begin(), ds.end(),
                         [](const Diagnostic& d) { return d.severity == Severity::kViolation; });
}

}  // namespace crtasks
