// pattern.hpp -- patterns over group-element supports, pattern presentations
// over word supports, consistency, realization, translation, restriction,
// extension enumeration, and occurrence testing.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "symdyn/group.hpp"
#include "symdyn/verdict.hpp"

namespace symdyn {

// Index into an Alphabet.
using Symbol = int;

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
        if (symbols_.empty()) throw Error("alphabet: at least one symbol required");
        std::set<std::string> seen;
        for (const auto& s : symbols_)
            if (!seen.insert(s).second) throw Error("alphabet: duplicate symbol '" + s + "'");
    }

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::string& name(Symbol s) const { return symbols_.at(static_cast<std::size_t>(s)); }
    const std::vector<std::string>& names() const { return symbols_; }

    std::optional<Symbol> index(const std::string& name) const {
        for (std::size_t i = 0; i < symbols_.size(); ++i)
            if (symbols_[i] == name) return static_cast<Symbol>(i);
        return std::nullopt;
    }

    Symbol index_or_throw(const std::string& name) const {
        auto s = index(name);
        if (!s) throw Error("alphabet: unknown symbol '" + name + "'");
        return *s;
    }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> symbols_;
};

// A finite pattern: a symbol assignment on a finite set of group elements.
// Cells are kept sorted by the canonical (shortlex) order, so equality is
// structural and patterns order deterministically inside language sets.
class Pattern {
public:
    using Cell = std::pair<GroupElement, Symbol>;

    Pattern() = default;

    explicit Pattern(std::vector<Cell> cells) : cells_(std::move(cells)) {
        std::sort(cells_.begin(), cells_.end());
        for (std::size_t i = 1; i < cells_.size(); ++i)
            if (cells_[i].first == cells_[i - 1].first)
                throw Error("pattern: duplicate cell in support");
    }

    bool empty() const { return cells_.empty(); }
    std::size_t size() const { return cells_.size(); }
    const std::vector<Cell>& cells() const { return cells_; }

    std::vector<GroupElement> support() const {
        std::vector<GroupElement> s;
        s.reserve(cells_.size());
        for (const auto& [g, v] : cells_) s.push_back(g);
        return s;
    }

    std::optional<Symbol> at(const GroupElement& g) const {
        auto it = std::lower_bound(cells_.begin(), cells_.end(), g,
                                   [](const Cell& c, const GroupElement& e) { return c.first < e; });
        if (it != cells_.end() && it->first == g) return it->second;
        return std::nullopt;
    }

    bool defines(const GroupElement& g) const { return at(g).has_value(); }

    // Radius of the smallest ball containing the support (0 for the empty
    // pattern); canonical forms are geodesic so this is the max word norm.
    int radius() const {
        std::size_t r = 0;
        for (const auto& [g, v] : cells_) r = std::max(r, g.norm());
        return static_cast<int>(r);
    }

    friend bool operator==(const Pattern&, const Pattern&) = default;
    friend std::strong_ordering operator<=>(const Pattern& a, const Pattern& b) {
        return a.cells_ <=> b.cells_;
    }

private:
    std::vector<Cell> cells_;
};

// A pattern presentation: a symbol assignment on a finite set of words,
// standing for a pattern once word equalities are resolved.
class PatternPresentation {
public:
    using Cell = std::pair<Word, Symbol>;

    PatternPresentation() = default;

    explicit PatternPresentation(std::vector<Cell> cells) : cells_(std::move(cells)) {
        std::sort(cells_.begin(), cells_.end());
        for (std::size_t i = 1; i < cells_.size(); ++i)
            if (cells_[i].first == cells_[i - 1].first)
                throw Error("presentation: duplicate word in support");
    }

    bool empty() const { return cells_.empty(); }
    std::size_t size() const { return cells_.size(); }
    const std::vector<Cell>& cells() const { return cells_; }

    friend bool operator==(const PatternPresentation&, const PatternPresentation&) = default;
    friend std::strong_ordering operator<=>(const PatternPresentation& a,
                                            const PatternPresentation& b) {
        return a.cells_ <=> b.cells_;
    }

private:
    std::vector<Cell> cells_;
};

struct ConsistencyResult {
    Verdict verdict = Verdict::Unknown;
    // For CertifiedNo: a pair of support words certified equal in G but
    // assigned different symbols, with the rewriting proof when the context
    // is semi-decidable.
    std::optional<std::pair<Word, Word>> violation;
    std::vector<RewriteMove> proof;
};

// Checks that equal support words carry equal symbols. Decidable contexts
// answer exactly; semi-decidable contexts can only certify inconsistency.
inline ConsistencyResult consistency_check(const GroupCtx& ctx, const PatternPresentation& p,
                                           int fuel) {
    const auto& cells = p.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            if (cells[i].second == cells[j].second) continue;
            EqualsResult eq = ctx.equals_semi(cells[i].first, cells[j].first, fuel);
            if (eq.verdict == Verdict::CertifiedYes)
                return {Verdict::CertifiedNo,
                        std::make_pair(cells[i].first, cells[j].first),
                        std::move(eq.proof)};
        }
    }
    if (ctx.decidable()) return {Verdict::CertifiedYes, std::nullopt, {}};
    return {Verdict::Unknown, std::nullopt, {}};
}

// Realizes a consistent presentation as a pattern over the group.
inline Pattern realize(const GroupCtx& ctx, const PatternPresentation& p) {
    if (!ctx.decidable()) throw Error("realize: requires a decidable word problem");
    std::map<GroupElement, Symbol> values;
    for (const auto& [w, sym] : p.cells()) {
        GroupElement g = ctx.canonicalize(w);
        auto [it, inserted] = values.emplace(g, sym);
        if (!inserted && it->second != sym)
            throw Error("realize: inconsistent presentation (words '" + w.letters() + "' and '" +
                        it->first.word().letters() + "' collide with different symbols)");
    }
    std::vector<Pattern::Cell> cells(values.begin(), values.end());
    return Pattern(std::move(cells));
}

// The translation gq: support gE, (gq)(h) = q(g^-1 h).
inline Pattern translate(const GroupCtx& ctx, const GroupElement& g, const Pattern& q) {
    std::vector<Pattern::Cell> cells;
    cells.reserve(q.size());
    for (const auto& [e, sym] : q.cells()) cells.emplace_back(ctx.mul(g, e), sym);
    return Pattern(std::move(cells));
}

// Restriction q|_E. E must be contained in the support.
inline Pattern restrict_to(const Pattern& q, const std::vector<GroupElement>& e) {
    std::vector<Pattern::Cell> cells;
    cells.reserve(e.size());
    for (const auto& g : e) {
        auto v = q.at(g);
        if (!v) throw Error("restrict_to: cell outside the pattern support");
        cells.emplace_back(g, *v);
    }
    return Pattern(std::move(cells));
}

// Streams every pattern on `target` that restricts to `q`, in deterministic
// order: free cells in canonical support order, symbols in alphabet order,
// the last free cell varying fastest.
class ExtensionStream {
public:
    ExtensionStream(const Pattern& q, std::vector<GroupElement> target, const Alphabet& alphabet)
        : base_(q), alphabet_size_(alphabet.size()) {
        std::sort(target.begin(), target.end());
        target.erase(std::unique(target.begin(), target.end()), target.end());
        for (const auto& g : q.support())
            if (!std::binary_search(target.begin(), target.end(), g))
                throw Error("extensions: target does not contain the pattern support");
        for (const auto& g : target)
            if (!q.defines(g)) free_.push_back(g);
        digits_.assign(free_.size(), 0);
    }

    std::optional<Pattern> next() {
        if (done_) return std::nullopt;
        std::vector<Pattern::Cell> cells(base_.cells());
        for (std::size_t i = 0; i < free_.size(); ++i) cells.emplace_back(free_[i], digits_[i]);
        Pattern out{std::move(cells)};
        // Odometer step.
        done_ = true;
        for (std::size_t i = free_.size(); i-- > 0;) {
            if (++digits_[i] < alphabet_size_) {
                done_ = false;
                break;
            }
            digits_[i] = 0;
        }
        if (free_.empty()) done_ = true;
        return out;
    }

    // Number of patterns the stream yields in total.
    unsigned long long count() const {
        unsigned long long n = 1;
        for (std::size_t i = 0; i < free_.size(); ++i) n *= static_cast<unsigned>(alphabet_size_);
        return n;
    }

private:
    Pattern base_;
    int alphabet_size_;
    std::vector<GroupElement> free_;
    std::vector<Symbol> digits_;
    bool done_ = false;
};

inline ExtensionStream extensions(const Pattern& q, std::vector<GroupElement> target,
                                  const Alphabet& alphabet) {
    return ExtensionStream(q, std::move(target), alphabet);
}

// True iff some translate g p is a restriction of q. Candidate anchors are
// found by pinning each cell of p onto each cell of q, so the group itself
// is never enumerated.
inline bool occurs_in(const GroupCtx& ctx, const Pattern& p, const Pattern& q) {
    if (p.empty()) return true;
    if (p.size() > q.size()) return false;
    const GroupElement& anchor = p.cells().front().first;
    GroupElement anchor_inv = ctx.inv(anchor);
    std::set<GroupElement> tried;
    for (const auto& [b, bsym] : q.cells()) {
        GroupElement g = ctx.mul(b, anchor_inv);
        if (!tried.insert(g).second) continue;
        bool ok = true;
        for (const auto& [a, asym] : p.cells()) {
            auto v = q.at(ctx.mul(g, a));
            if (!v || *v != asym) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace symdyn
