#pragma once
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace crtasks {

// True for "scheme:rest" per RFC 3986 scheme syntax. Compact forms like
// "cr:Task" also satisfy this, so prefix lookup must run first.
inline bool looks_absolute_iri(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos || colon == 0) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (size_t i = 1; i < colon; ++i) {
        char c = s[i];
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
            return false;
    }
    return true;
}

// Prefix -> namespace table. Expansion prefers a declared prefix over the
// absolute-IRI fallback; compaction picks the longest namespace match and
// breaks prefix ties by shortest-then-lexicographic name.
class PrefixTable {
  public:
    void set(std::string prefix, std::string ns) { table_[std::move(prefix)] = std::move(ns); }

    bool has(const std::string& prefix) const { return table_.count(prefix) != 0; }

    const std::map<std::string, std::string>& entries() const { return table_; }

    // Compact or absolute form -> absolute IRI; nullopt when the form has an
    // unknown prefix and is not itself absolute. Idempotent on absolute IRIs.
    std::optional<std::string> expand(std::string_view value) const {
        auto colon = value.find(':');
        if (colon != std::string_view::npos) {
            auto it = table_.find(std::string(value.substr(0, colon)));
            if (it != table_.end()) return it->second + std::string(value.substr(colon + 1));
        }
        if (looks_absolute_iri(value)) return std::string(value);
        return std::nullopt;
    }

    // Absolute IRI -> shortest compact form, or the input when no namespace
    // matches. The longest matching namespace wins so nested namespaces
    // compact correctly.
    std::string compact(std::string_view iri) const {
        const std::string* best_prefix = nullptr;
        size_t best_len = 0;
        for (const auto& [prefix, ns] : table_) {
            if (ns.empty() || iri.substr(0, ns.size()) != ns) continue;
            if (ns.size() > best_len) {
                best_len = ns.size();
                best_prefix = &prefix;
            } else if (ns.size() == best_len && best_prefix &&
                       (prefix.size() < best_prefix->size() ||
                        (prefix.size() == best_prefix->size() && prefix < *best_prefix))) {
                best_prefix = &prefix;
            }
        }
        if (!best_prefix) return std::string(iri);
        return *best_prefix + ":" + std::string(iri.substr(best_len));
    }

    bool operator==(const PrefixTable& other) const { return table_ == other.table_; }

  private:
    std::map<std::string, std::string> table_;
};

inline const std::string kCroissantNs = "http://mlcommons.org/croissant/";
inline const std::string kSchemaNs = "https://schema.org/";
inline const std::string kXsdNs = "http://www.w3.org/2001/XMLSchema#";
inline const std::string kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";

inline std::string cr(std::string_view local) { return kCroissantNs + std::string(local); }
inline std::string sc(std::string_view local) { return kSchemaNs + std::string(local); }
inline std::string xsd(std::string_view local) { return kXsdNs + std::string(local); }

// Prefixes every document understands without declaring them.
inline PrefixTable builtin_doc_prefixes() {
    PrefixTable t;
    t.set("cr", kCroissantNs);
    t.set("croissant", kCroissantNs);
    t.set("sc", kSchemaNs);
    t.set("schema", kSchemaNs);
    t.set("xsd", kXsdNs);
    return t;
}

// Local name after the last '#' or '/'.
inline std::string iri_local_name(std::string_view iri) {
    auto pos = iri.find_last_of("#/");
    if (pos == std::string_view::npos || pos + 1 >= iri.size()) return std::string(iri);
    return std::string(iri.substr(pos + 1));
}

}  // namespace crtasks
