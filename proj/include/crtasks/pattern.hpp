#pragma once
#include <bitset>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace crtasks {

// Pattern compile failure; pos is the byte offset of the offending construct.
struct PatternError : std::runtime_error {
    PatternError(size_t pos, const std::string& what)
        : std::runtime_error("pattern:" + std::to_string(pos) + ": " + what), pos(pos) {}
    size_t pos;
};

namespace detail {
class PatternCompiler;
}

// Anchored-regex subset for valuePattern checks: literals, escaped
// punctuation, character classes with ranges and negation, '.', '^', '$',
// '*', '+', '?', '|', groups, and bounded repetition {m} / {m,n} with
// n <= 256. Open-ended {m,} and class escapes like \d are compile errors.
// Matching is byte-oriented and always full-match: patterns without anchors
// behave as if wrapped in ^...$.
class Pattern {
  public:
    bool full_match(std::string_view value) const {
        std::vector<char> current(states_.size(), 0), next(states_.size(), 0);
        add_closure(start_, 0, value.size(), current);
        for (size_t i = 0; i < value.size(); ++i) {
            std::fill(next.begin(), next.end(), 0);
            unsigned char c = static_cast<unsigned char>(value[i]);
            bool any = false;
            for (size_t s = 0; s < states_.size(); ++s) {
                if (!current[s]) continue;
                for (const auto& e : states_[s].edges) {
                    if (e.kind == Edge::Kind::kSym && e.match->test(c)) {
                        add_closure(e.target, i + 1, value.size(), next);
                        any = true;
                    }
                }
            }
            if (!any) return false;
            current.swap(next);
        }
        return current[accept_] != 0;
    }

  private:
    friend class detail::PatternCompiler;

    struct Edge {
        enum class Kind { kEps, kSym, kBol, kEol };
        Kind kind;
        int target;
        std::shared_ptr<std::bitset<256>> match;  // kSym only
    };
    struct State {
        std::vector<Edge> edges;
    };

    int add_state() {
        states_.emplace_back();
        return static_cast<int>(states_.size()) - 1;
    }

    void add_closure(int state, size_t pos, size_t len, std::vector<char>& set) const {
        if (set[state]) return;
        set[state] = 1;
        for (const auto& e : states_[state].edges) {
            if (e.kind == Edge::Kind::kEps) add_closure(e.target, pos, len, set);
            else if (e.kind == Edge::Kind::kBol && pos == 0) add_closure(e.target, pos, len, set);
            else if (e.kind == Edge::Kind::kEol && pos == len) add_closure(e.target, pos, len, set);
        }
    }

    std::vector<State> states_;
    int start_ = 0;
    int accept_ = 0;
};

namespace detail {

// Recursive-descent compiler emitting NFA fragments (start state, dangling
// exit patched by the caller). Counted repetition is expanded structurally,
// which the n <= 256 cap keeps bounded.
class PatternCompiler {
  public:
    PatternCompiler(std::string_view src, Pattern& out) : src_(src), out_(out) {}

    void compile() {
        int start = out_.add_state();
        int accept = out_.add_state();
        auto frag = parse_alt();
        if (pos_ != src_.size()) fail(pos_, "unmatched ')'");
        link(start, frag.start);
        patch(frag, accept);
        out_.start_ = start;
        out_.accept_ = accept;
    }

  private:
    struct Frag {
        int start;
        std::vector<std::pair<int, size_t>> exits;  // (state, edge index) to patch
    };

    [[noreturn]] void fail(size_t at, const std::string& msg) const { throw PatternError(at, msg); }

    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    char take() { return src_[pos_++]; }

    void link(int from, int to) {
        out_.states_[from].edges.push_back({Pattern::Edge::Kind::kEps, to, nullptr});
    }

    // Adds a dangling edge and records it for patching.
    void dangle(Frag& frag, int from, Pattern::Edge::Kind kind,
                std::shared_ptr<std::bitset<256>> match = nullptr) {
        auto& edges = out_.states_[from].edges;
        edges.push_back({kind, -1, std::move(match)});
        frag.exits.emplace_back(from, edges.size() - 1);
    }

    void patch(Frag& frag, int target) {
        for (auto [state, idx] : frag.exits) out_.states_[state].edges[idx].target = target;
        frag.exits.clear();
    }

    Frag parse_alt() {
        size_t first_at = pos_;
        Frag frag = parse_concat();
        if (eof() || peek() != '|') return frag;
        if (pos_ == first_at) fail(first_at, "empty alternation branch");
        int start = out_.add_state();
        link(start, frag.start);
        Frag merged{start, std::move(frag.exits)};
        while (!eof() && peek() == '|') {
            take();
            size_t at = pos_;
            Frag branch = parse_concat();
            if (pos_ == at) fail(at, "empty alternation branch");
            link(start, branch.start);
            merged.exits.insert(merged.exits.end(), branch.exits.begin(), branch.exits.end());
        }
        return merged;
    }

    Frag parse_concat() {
        int start = out_.add_state();
        Frag frag{start, {}};
        dangle(frag, start, Pattern::Edge::Kind::kEps);
        while (!eof() && peek() != '|' && peek() != ')') {
            Frag atom = parse_repeat();
            patch(frag, atom.start);
            frag.exits = std::move(atom.exits);
        }
        return frag;
    }

    Frag parse_repeat() {
        size_t at = pos_;
        Frag atom = parse_atom();
        while (!eof()) {
            char c = peek();
            if (c == '*' || c == '+' || c == '?') {
                take();
                atom = apply_star(std::move(atom), c != '+', c == '?');
            } else if (c == '{') {
                atom = apply_counted(std::move(atom), at);
            } else {
                break;
            }
            at = pos_;
        }
        return atom;
    }

    // optional: allow zero occurrences; once: cap at a single occurrence ('?')
    Frag apply_star(Frag inner, bool optional, bool once) {
        int start = out_.add_state();
        Frag frag{start, {}};
        link(start, inner.start);
        if (optional) dangle(frag, start, Pattern::Edge::Kind::kEps);
        if (once) {
            frag.exits.insert(frag.exits.end(), inner.exits.begin(), inner.exits.end());
        } else {
            int loop = out_.add_state();
            patch(inner, loop);
            link(loop, inner.start);
            dangle(frag, loop, Pattern::Edge::Kind::kEps);
        }
        return frag;
    }

    Frag apply_counted(Frag inner, size_t atom_at) {
        size_t brace_at = pos_;
        take();  // '{'
        auto read_int = [&]() -> long {
            size_t digits_at = pos_;
            long v = 0;
            bool any = false;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                v = v * 10 + (take() - '0');
                any = true;
                if (v > 100000) fail(digits_at, "repetition bound too large");
            }
            if (!any) fail(pos_, "expected a number in {}");
            return v;
        };
        long m = read_int();
        long n = m;
        if (!eof() && peek() == ',') {
            take();
            if (!eof() && peek() == '}')
                fail(brace_at, "open-ended repetition {m,} is not supported");
            n = read_int();
        }
        if (eof() || peek() != '}') fail(brace_at, "unterminated repetition");
        take();
        if (n > 256) fail(brace_at, "repetition bound exceeds 256");
        if (m > n) fail(brace_at, "repetition bounds out of order");

        // m mandatory copies followed by n-m optional ones.
        Frag frag{out_.add_state(), {}};
        dangle(frag, frag.start, Pattern::Edge::Kind::kEps);
        std::string atom_src(src_.substr(atom_at, brace_at - atom_at));
        for (long i = 0; i < n; ++i) {
            Frag copy = i == 0 ? std::move(inner) : clone_atom(atom_src, atom_at);
            if (i >= m) {
                int skip = out_.add_state();
                link(skip, copy.start);
                Frag opt{skip, std::move(copy.exits)};
                dangle(opt, skip, Pattern::Edge::Kind::kEps);
                copy = std::move(opt);
            }
            patch(frag, copy.start);
            frag.exits = std::move(copy.exits);
        }
        if (n == 0) {
            // {0}: nothing consumed; frag already epsilon-through
        }
        return frag;
    }

    // Re-parses the atom's source to emit a fresh copy of its fragment.
    Frag clone_atom(const std::string& atom_src, size_t err_at) {
        PatternCompiler sub(atom_src, out_);
        sub.pos_ = 0;
        Frag f = sub.parse_atom();
        if (sub.pos_ != atom_src.size()) fail(err_at, "invalid repetition target");
        return f;
    }

    Frag parse_atom() {
        if (eof()) fail(pos_, "pattern ended unexpectedly");
        size_t at = pos_;
        char c = take();
        switch (c) {
            case '(': {
                Frag inner = parse_alt();
                if (eof() || peek() != ')') fail(at, "unterminated group");
                take();
                return inner;
            }
            case ')': fail(at, "unmatched ')'");
            case '[': return parse_class(at);
            case ']': fail(at, "unmatched ']'");
            case '{': fail(at, "repetition without a target");
            case '}': fail(at, "unmatched '}'");
            case '*': case '+': case '?': fail(at, "repetition without a target");
            case '|': fail(at, "empty alternation branch");
            case '^': return assertion(Pattern::Edge::Kind::kBol);
            case '$': return assertion(Pattern::Edge::Kind::kEol);
            case '.': {
                auto any = std::make_shared<std::bitset<256>>();
                any->set();
                return symbol(std::move(any));
            }
            case '\\': return symbol(single_char(parse_escape(at)));
            default: return symbol(single_char(c));
        }
    }

    Frag assertion(Pattern::Edge::Kind kind) {
        int start = out_.add_state();
        Frag frag{start, {}};
        dangle(frag, start, kind);
        return frag;
    }

    Frag symbol(std::shared_ptr<std::bitset<256>> match) {
        int start = out_.add_state();
        Frag frag{start, {}};
        dangle(frag, start, Pattern::Edge::Kind::kSym, std::move(match));
        return frag;
    }

    static std::shared_ptr<std::bitset<256>> single_char(char c) {
        auto set = std::make_shared<std::bitset<256>>();
        set->set(static_cast<unsigned char>(c));
        return set;
    }

    // Only punctuation may be escaped; class shorthands are not part of the
    // subset and must fail loudly rather than silently match literally.
    char parse_escape(size_t at) {
        if (eof()) fail(at, "dangling escape");
        char e = take();
        static const std::string kEscapable = "\\.*+?()[]{}|^$-/";
        if (kEscapable.find(e) == std::string::npos)
            fail(at, std::string("unsupported escape '\\") + e + "'");
        return e;
    }

    Frag parse_class(size_t at) {
        auto set = std::make_shared<std::bitset<256>>();
        bool negate = false;
        if (!eof() && peek() == '^') {
            negate = true;
            take();
        }
        bool any = false;
        while (!eof() && peek() != ']') {
            size_t item_at = pos_;
            char lo = take();
            if (lo == '\\') lo = parse_escape(item_at);
            if (!eof() && peek() == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] != ']') {
                take();  // '-'
                size_t hi_at = pos_;
                char hi = take();
                if (hi == '\\') hi = parse_escape(hi_at);
                if (static_cast<unsigned char>(lo) > static_cast<unsigned char>(hi))
                    fail(item_at, "character range out of order");
                for (int ch = static_cast<unsigned char>(lo); ch <= static_cast<unsigned char>(hi); ++ch)
                    set->set(ch);
            } else {
                set->set(static_cast<unsigned char>(lo));
            }
            any = true;
        }
        if (eof()) fail(at, "unterminated character class");
        take();  // ']'
        if (!any) fail(at, "empty character class");
        if (negate) *set = ~*set;
        return symbol(std::move(set));
    }

    std::string_view src_;
    size_t pos_ = 0;
    Pattern& out_;
};

}  // namespace detail

inline Pattern compile_pattern(std::string_view pattern) {
    Pattern p;
    detail::PatternCompiler compiler(pattern, p);
    compiler.compile();
    return p;
}

}  // namespace crtasks
