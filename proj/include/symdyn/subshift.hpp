// subshift.hpp -- SFTs from forbidden patterns, fuel-bounded local
// admissibility with refutation certificates, exact languages for
// one-dimensional SFTs via a de Bruijn automaton, the metric D on the space
// of subshifts, and subset semi-decision.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symdyn/group.hpp"
#include "symdyn/pattern.hpp"
#include "symdyn/verdict.hpp"

namespace symdyn {

// A subshift of finite type: a context, an alphabet, and a finite set of
// realized forbidden patterns. The range is the radius of the smallest ball
// containing every forbidden support.
class Sft {
public:
    Sft(GroupCtx ctx, Alphabet alphabet, std::vector<Pattern> forbidden)
        : ctx_(std::move(ctx)), alphabet_(std::move(alphabet)) {
        std::set<Pattern> dedup;
        for (auto& f : forbidden) {
            for (const auto& [g, sym] : f.cells())
                if (sym < 0 || sym >= alphabet_.size())
                    throw Error("sft: forbidden pattern uses a symbol outside the alphabet");
            dedup.insert(std::move(f));
        }
        forbidden_.assign(dedup.begin(), dedup.end());
        range_ = 0;
        for (const auto& f : forbidden_) range_ = std::max(range_, f.radius());
    }

    const GroupCtx& ctx() const { return ctx_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Pattern>& forbidden() const { return forbidden_; }
    int range() const { return range_; }

    friend bool operator==(const Sft& a, const Sft& b) {
        return a.ctx_ == b.ctx_ && a.alphabet_ == b.alphabet_ && a.forbidden_ == b.forbidden_;
    }

private:
    GroupCtx ctx_;
    Alphabet alphabet_;
    std::vector<Pattern> forbidden_;
    int range_;
};

// Builds an SFT from pattern presentations, certifying consistency first.
// Semi-decidable contexts are rejected: consistency can never be certified
// there, so realized forbidden patterns would be unfounded.
inline Sft sft_build(const GroupCtx& ctx, const Alphabet& alphabet,
                     const std::vector<PatternPresentation>& presentations, int fuel) {
    std::vector<Pattern> forbidden;
    forbidden.reserve(presentations.size());
    for (const auto& p : presentations) {
        ConsistencyResult c = consistency_check(ctx, p, fuel);
        if (c.verdict == Verdict::CertifiedNo)
            throw Error("sft_build: inconsistent presentation (words '" +
                        c.violation->first.letters() + "' and '" + c.violation->second.letters() +
                        "' are equal in the group but carry different symbols)");
        if (c.verdict == Verdict::Unknown)
            throw Error(
                "sft_build: consistency cannot be certified over a semi-decidable word "
                "problem (fuel exhausted)");
        forbidden.push_back(realize(ctx, p));
    }
    return Sft(ctx, alphabet, std::move(forbidden));
}

// A violated constraint: the forbidden pattern with this index, translated
// by `translate`, is fully assigned and matches.
struct RefutationViolation {
    int forbidden_index;
    GroupElement translate;

    friend auto operator<=>(const RefutationViolation&, const RefutationViolation&) = default;
};

// Exhaustion trace of a failed extension search. A leaf names the violated
// constraint; a branch names the cell that was assigned next (always the
// first unassigned cell in canonical order) with one subtree per symbol.
struct Refutation {
    std::optional<RefutationViolation> violation;
    std::optional<GroupElement> cell;
    std::vector<Refutation> children;

    bool is_leaf() const { return violation.has_value(); }
};

struct AdmissResult {
    // CertifiedNo: no extension avoids the forbidden patterns (refutation
    // attached). Unknown: some extension survives (witness attached);
    // membership in the language is not decided.
    Verdict verdict = Verdict::Unknown;
    std::optional<Pattern> witness;
    std::shared_ptr<const Refutation> refutation;
    int domain_radius = 0;
    int margin = 0;
};

namespace detail {

// Backtracking search for an extension of a fixed-support pattern to the
// ball B_{n+margin} avoiding every fully contained forbidden translate.
// Built once per (sft, support, margin); run once per value assignment.
class AdmissSearch {
public:
    AdmissSearch(const Sft& x, const std::vector<GroupElement>& support, int margin)
        : sft_(x), margin_(margin) {
        if (!x.ctx().decidable())
            throw Error("locally_admissible: requires a decidable word problem");
        if (margin < 0) throw Error("locally_admissible: margin must be >= 0");
        int n = 0;
        for (const auto& g : support) n = std::max(n, static_cast<int>(g.norm()));
        radius_ = n + margin;
        domain_ = x.ctx().ball(radius_);
        for (std::size_t i = 0; i < domain_.size(); ++i) index_.emplace(domain_[i], i);

        std::vector<bool> fixed(domain_.size(), false);
        for (const auto& g : support) {
            auto it = index_.find(g);
            if (it == index_.end()) throw Error("locally_admissible: support cell outside ball");
            fixed[it->second] = true;
        }
        for (std::size_t i = 0; i < domain_.size(); ++i)
            if (!fixed[i]) free_.push_back(i);

        build_constraints();
    }

    int radius() const { return radius_; }
    int margin() const { return margin_; }

    AdmissResult run(const Pattern& q) {
        values_.assign(domain_.size(), -1);
        for (const auto& [g, sym] : q.cells()) {
            if (sym < 0 || sym >= sft_.alphabet().size())
                throw Error("locally_admissible: pattern symbol outside the alphabet");
            values_[index_.at(g)] = sym;
        }

        AdmissResult result;
        result.domain_radius = radius_;
        result.margin = margin_;

        if (has_empty_forbidden_) {
            auto leaf = std::make_shared<Refutation>();
            leaf->violation = RefutationViolation{empty_forbidden_index_, GroupElement{}};
            result.verdict = Verdict::CertifiedNo;
            result.refutation = std::move(leaf);
            return result;
        }

        // Initialize counters; detect constraints already violated by q.
        std::optional<RefutationViolation> root_violation;
        for (auto& c : constraints_) {
            c.unassigned = 0;
            c.mismatched = 0;
            for (const auto& [cell, sym] : c.cells) {
                if (values_[cell] < 0) ++c.unassigned;
                else if (values_[cell] != sym) ++c.mismatched;
            }
            if (c.unassigned == 0 && c.mismatched == 0) {
                RefutationViolation v{c.forbidden_index, c.translate};
                if (!root_violation || v < *root_violation) root_violation = v;
            }
        }
        if (root_violation) {
            auto leaf = std::make_shared<Refutation>();
            leaf->violation = *root_violation;
            result.verdict = Verdict::CertifiedNo;
            result.refutation = std::move(leaf);
            return result;
        }

        Refutation root;
        if (search(0, root)) {
            std::vector<Pattern::Cell> cells;
            cells.reserve(domain_.size());
            for (std::size_t i = 0; i < domain_.size(); ++i)
                cells.emplace_back(domain_[i], values_[i]);
            result.verdict = Verdict::Unknown;
            result.witness = Pattern(std::move(cells));
        } else {
            result.verdict = Verdict::CertifiedNo;
            result.refutation = std::make_shared<Refutation>(std::move(root));
        }
        return result;
    }

private:
    struct Constraint {
        int forbidden_index;
        GroupElement translate;
        std::vector<std::pair<std::size_t, Symbol>> cells;  // (domain index, required)
        int unassigned = 0;
        int mismatched = 0;
    };

    void build_constraints() {
        const auto& ctx = sft_.ctx();
        const auto& forbidden = sft_.forbidden();
        for (int fi = 0; fi < static_cast<int>(forbidden.size()); ++fi) {
            const Pattern& f = forbidden[fi];
            if (f.empty()) {
                // The empty pattern appears everywhere: nothing is admissible.
                if (!has_empty_forbidden_) {
                    has_empty_forbidden_ = true;
                    empty_forbidden_index_ = fi;
                }
                continue;
            }
            GroupElement anchor_inv = ctx.inv(f.cells().front().first);
            std::set<GroupElement> candidates;
            for (const auto& b : domain_) candidates.insert(ctx.mul(b, anchor_inv));
            for (const auto& g : candidates) {
                Constraint c;
                c.forbidden_index = fi;
                c.translate = g;
                bool inside = true;
                for (const auto& [cell, sym] : f.cells()) {
                    auto it = index_.find(ctx.mul(g, cell));
                    if (it == index_.end()) {
                        inside = false;
                        break;
                    }
                    c.cells.emplace_back(it->second, sym);
                }
                if (inside) constraints_.push_back(std::move(c));
            }
        }
        std::sort(constraints_.begin(), constraints_.end(),
                  [](const Constraint& a, const Constraint& b) {
                      if (a.forbidden_index != b.forbidden_index)
                          return a.forbidden_index < b.forbidden_index;
                      return a.translate < b.translate;
                  });
        watch_.assign(domain_.size(), {});
        for (std::size_t ci = 0; ci < constraints_.size(); ++ci)
            for (const auto& [cell, sym] : constraints_[ci].cells)
                watch_[cell].push_back(ci);
    }

    // Depth-first over free cells in canonical order, symbols in alphabet
    // order. Returns true when a surviving assignment was found (left in
    // values_); otherwise fills `node` with the refutation subtree.
    bool search(std::size_t depth, Refutation& node) {
        if (depth == free_.size()) return true;
        std::size_t cell = free_[depth];
        node.cell = domain_[cell];
        node.children.resize(static_cast<std::size_t>(sft_.alphabet().size()));
        for (Symbol sym = 0; sym < sft_.alphabet().size(); ++sym) {
            values_[cell] = sym;
            std::optional<RefutationViolation> violated;
            for (std::size_t ci : watch_[cell]) {
                Constraint& c = constraints_[ci];
                --c.unassigned;
                if (required_symbol(c, cell) != sym) ++c.mismatched;
                if (c.unassigned == 0 && c.mismatched == 0) {
                    RefutationViolation v{c.forbidden_index, c.translate};
                    if (!violated || v < *violated) violated = v;
                }
            }
            bool found = false;
            if (violated) {
                node.children[static_cast<std::size_t>(sym)].violation = *violated;
            } else {
                found = search(depth + 1, node.children[static_cast<std::size_t>(sym)]);
            }
            for (std::size_t ci : watch_[cell]) {
                Constraint& c = constraints_[ci];
                ++c.unassigned;
                if (required_symbol(c, cell) != sym) --c.mismatched;
            }
            if (found) return true;
            values_[cell] = -1;
        }
        return false;
    }

    Symbol required_symbol(const Constraint& c, std::size_t cell) const {
        for (const auto& [idx, sym] : c.cells)
            if (idx == cell) return sym;
        throw Error("internal: constraint does not watch this cell");
    }

    const Sft& sft_;
    int margin_;
    int radius_;
    std::vector<GroupElement> domain_;
    std::map<GroupElement, std::size_t> index_;
    std::vector<std::size_t> free_;
    std::vector<Constraint> constraints_;
    std::vector<std::vector<std::size_t>> watch_;
    std::vector<Symbol> values_;
    bool has_empty_forbidden_ = false;
    int empty_forbidden_index_ = -1;
};

}  // namespace detail

// Decides whether some extension of q to B_{n+margin} (n the radius of q's
// support) avoids every forbidden translate fully contained in the ball.
// CertifiedNo certifies q is not in the language; Unknown carries the first
// surviving extension in canonical order as a witness. CertifiedNo is
// monotone in the margin.
inline AdmissResult locally_admissible(const Sft& x, const Pattern& q, int margin) {
    detail::AdmissSearch search(x, q.support(), margin);
    return search.run(q);
}

// Re-verifies a refutation without searching: walks the tree, checking that
// every branch assigns the first unassigned cell in canonical order, covers
// every symbol, and that every leaf names a fully assigned, matching
// forbidden translate. Runtime is linear in the tree size.
inline bool verify_refutation(const Sft& x, const Pattern& q, int margin,
                              const Refutation& root, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!x.ctx().decidable()) return fail("context is not decidable");
    if (margin < 0) return fail("negative margin");
    int n = q.radius();
    std::vector<GroupElement> domain = x.ctx().ball(n + margin);
    std::map<GroupElement, Symbol> values;
    for (const auto& [g, sym] : q.cells()) {
        if (sym < 0 || sym >= x.alphabet().size()) return fail("pattern symbol out of range");
        values[g] = sym;
    }
    for (const auto& [g, sym] : values)
        if (!std::binary_search(domain.begin(), domain.end(), g))
            return fail("pattern support outside the ball");

    auto check_violation = [&](const RefutationViolation& v) -> bool {
        if (v.forbidden_index < 0 ||
            v.forbidden_index >= static_cast<int>(x.forbidden().size()))
            return false;
        const Pattern& f = x.forbidden()[static_cast<std::size_t>(v.forbidden_index)];
        if (f.empty()) return true;  // matches everywhere
        for (const auto& [cell, sym] : f.cells()) {
            GroupElement h = x.ctx().mul(v.translate, cell);
            if (!std::binary_search(domain.begin(), domain.end(), h)) return false;
            auto it = values.find(h);
            if (it == values.end() || it->second != sym) return false;
        }
        return true;
    };

    std::function<bool(const Refutation&)> walk = [&](const Refutation& node) -> bool {
        if (node.is_leaf()) {
            if (node.cell || !node.children.empty()) return fail("malformed leaf");
            if (!check_violation(*node.violation)) return fail("leaf violation does not hold");
            return true;
        }
        if (!node.cell) return fail("branch without a cell");
        // The branch cell must be the first unassigned domain cell.
        const GroupElement* expected = nullptr;
        for (const auto& g : domain) {
            if (!values.count(g)) {
                expected = &g;
                break;
            }
        }
        if (!expected) return fail("branch but no unassigned cell remains");
        if (!(*node.cell == *expected)) return fail("branch cell out of canonical order");
        if (static_cast<int>(node.children.size()) != x.alphabet().size())
            return fail("branch does not cover the alphabet");
        for (Symbol sym = 0; sym < x.alphabet().size(); ++sym) {
            values[*node.cell] = sym;
            bool ok = walk(node.children[static_cast<std::size_t>(sym)]);
            values.erase(*node.cell);
            if (!ok) return false;
        }
        return true;
    };
    return walk(root);
}

// A set of patterns on B_n: exactly the language when `exact`, otherwise a
// superset (every pattern not refuted at the given margin).
struct LangApprox {
    int n = 0;
    int margin = 0;
    bool exact = false;
    std::set<Pattern> patterns;
};

// Every pattern on B_n that locally_admissible does not refute at the given
// margin. Always a superset of the language on B_n; shrinks as the margin
// grows.
inline LangApprox language_upper(const Sft& x, int n, int margin) {
    if (n < 0) throw Error("language_upper: n must be >= 0");
    std::vector<GroupElement> cells = x.ctx().ball(n);
    detail::AdmissSearch search(x, cells, margin);
    LangApprox out;
    out.n = n;
    out.margin = margin;
    out.exact = false;
    ExtensionStream stream(Pattern{}, cells, x.alphabet());
    while (auto q = stream.next()) {
        if (search.run(*q).verdict != Verdict::CertifiedNo) out.patterns.insert(*q);
    }
    return out;
}

namespace detail {

// De Bruijn automaton for an SFT over Z: vertices are (L-1)-blocks, edges
// are L-windows avoiding the expanded forbidden words, trimmed to the
// vertices lying on bi-infinite paths.
struct DeBruijn1d {
    int asize = 0;
    int window = 2;           // L
    long vcount = 0;          // asize^(L-1)
    bool forbids_everything = false;  // an empty forbidden pattern exists
    std::vector<bool> forbidden_word;  // indexed by L-word code
    std::vector<bool> alive;

    static DeBruijn1d build(const Sft& x) {
        const GroupCtx& ctx = x.ctx();
        if (ctx.kind() != GroupKind::Zd || ctx.dimension() != 1)
            throw Error("exact 1d language: context is not Z");
        DeBruijn1d a;
        a.asize = x.alphabet().size();

        // Normalized forbidden patterns as (offset, symbol) lists.
        struct Constraint {
            std::vector<std::pair<long, Symbol>> cells;
            long width;
        };
        std::vector<Constraint> cons;
        long maxw = 1;
        for (const Pattern& f : x.forbidden()) {
            if (f.empty()) {
                a.forbids_everything = true;
                continue;
            }
            Constraint c;
            long lo = 0;
            bool first = true;
            std::vector<std::pair<long, Symbol>> raw;
            for (const auto& [g, sym] : f.cells()) {
                long off = ctx.zd_coords(g)[0];
                raw.emplace_back(off, sym);
                if (first || off < lo) lo = off;
                first = false;
            }
            long hi = lo;
            for (auto& [off, sym] : raw) {
                off -= lo;
                hi = std::max(hi, off);
            }
            std::sort(raw.begin(), raw.end());
            c.cells = std::move(raw);
            c.width = hi + 1;
            maxw = std::max(maxw, c.width);
            cons.push_back(std::move(c));
        }
        a.window = static_cast<int>(std::max<long>(2, maxw));
        a.vcount = 1;
        for (int i = 0; i + 1 < a.window; ++i) a.vcount *= a.asize;
        long wcount = a.vcount * a.asize;
        a.forbidden_word.assign(static_cast<std::size_t>(wcount), false);

        // Expand each constraint to the set of L-words matching it at offset 0.
        std::vector<Symbol> word(static_cast<std::size_t>(a.window), 0);
        for (const auto& c : cons) {
            std::vector<int> fixed(static_cast<std::size_t>(a.window), -1);
            for (const auto& [off, sym] : c.cells) fixed[static_cast<std::size_t>(off)] = sym;
            std::function<void(int)> fill = [&](int pos) {
                if (pos == a.window) {
                    long code = 0;
                    for (Symbol s : word) code = code * a.asize + s;
                    a.forbidden_word[static_cast<std::size_t>(code)] = true;
                    return;
                }
                if (fixed[static_cast<std::size_t>(pos)] >= 0) {
                    word[static_cast<std::size_t>(pos)] = fixed[static_cast<std::size_t>(pos)];
                    fill(pos + 1);
                } else {
                    for (Symbol s = 0; s < a.asize; ++s) {
                        word[static_cast<std::size_t>(pos)] = s;
                        fill(pos + 1);
                    }
                }
            };
            fill(0);
        }

        // Trim to vertices with both an incoming and an outgoing live edge.
        a.alive.assign(static_cast<std::size_t>(a.vcount), !a.forbids_everything);
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<bool> has_in(static_cast<std::size_t>(a.vcount), false);
            for (long u = 0; u < a.vcount; ++u) {
                if (!a.alive[static_cast<std::size_t>(u)]) continue;
                bool has_out = false;
                for (Symbol s = 0; s < a.asize; ++s) {
                    long w = u * a.asize + s;
                    if (a.forbidden_word[static_cast<std::size_t>(w)]) continue;
                    long v = w % a.vcount;
                    if (!a.alive[static_cast<std::size_t>(v)]) continue;
                    has_out = true;
                    has_in[static_cast<std::size_t>(v)] = true;
                }
                if (!has_out) {
                    a.alive[static_cast<std::size_t>(u)] = false;
                    changed = true;
                }
            }
            for (long v = 0; v < a.vcount; ++v) {
                if (a.alive[static_cast<std::size_t>(v)] && !has_in[static_cast<std::size_t>(v)]) {
                    a.alive[static_cast<std::size_t>(v)] = false;
                    changed = true;
                }
            }
        }
        return a;
    }

    bool nonempty() const {
        if (forbids_everything) return false;
        for (bool b : alive)
            if (b) return true;
        return false;
    }

    std::vector<Symbol> decode(long code, int length) const {
        std::vector<Symbol> w(static_cast<std::size_t>(length), 0);
        for (int i = length - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = static_cast<Symbol>(code % asize);
            code /= asize;
        }
        return w;
    }

    // All words of the given length in the language, sorted.
    std::vector<std::vector<Symbol>> words(int length) const {
        std::vector<std::vector<Symbol>> out;
        if (length < 0) throw Error("exact words: negative length");
        if (!nonempty()) return out;
        if (length == 0) return {std::vector<Symbol>{}};
        int block = window - 1;
        if (length < block) {
            std::set<std::vector<Symbol>> acc;
            for (long v = 0; v < vcount; ++v) {
                if (!alive[static_cast<std::size_t>(v)]) continue;
                std::vector<Symbol> w = decode(v, block);
                acc.insert(std::vector<Symbol>(w.begin(), w.begin() + length));
            }
            return {acc.begin(), acc.end()};
        }
        // Walks of length - block edges, collected in lexicographic order.
        std::vector<Symbol> word;
        std::function<void(long, int)> grow = [&](long v, int remaining) {
            if (remaining == 0) {
                out.push_back(word);
                return;
            }
            for (Symbol s = 0; s < asize; ++s) {
                long w = v * asize + s;
                if (forbidden_word[static_cast<std::size_t>(w)]) continue;
                long next = w % vcount;
                if (!alive[static_cast<std::size_t>(next)]) continue;
                word.push_back(s);
                grow(next, remaining - 1);
                word.pop_back();
            }
        };
        for (long v = 0; v < vcount; ++v) {
            if (!alive[static_cast<std::size_t>(v)]) continue;
            word = decode(v, block);
            grow(v, length - block);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

}  // namespace detail

// All words of the given length in the language of an SFT over Z, as symbol
// sequences in lexicographic order.
inline std::vector<std::vector<Symbol>> exact_words_1d(const Sft& x, int length) {
    return detail::DeBruijn1d::build(x).words(length);
}

// Exact language on B_n for an SFT over Z, via the trimmed de Bruijn
// automaton.
inline LangApprox language_exact_1d(const Sft& x, int n) {
    if (n < 0) throw Error("language_exact_1d: n must be >= 0");
    detail::DeBruijn1d a = detail::DeBruijn1d::build(x);
    LangApprox out;
    out.n = n;
    out.margin = 0;
    out.exact = true;
    int length = 2 * n + 1;
    for (const auto& w : a.words(length)) {
        std::vector<Pattern::Cell> cells;
        cells.reserve(w.size());
        for (int i = 0; i < length; ++i)
            cells.emplace_back(x.ctx().zd_element({static_cast<long>(i - n)}),
                               w[static_cast<std::size_t>(i)]);
        out.patterns.insert(Pattern(std::move(cells)));
    }
    return out;
}

// Margin at which language_upper provably coincides with the exact language
// for SFTs over Z: the vertex count of the (untrimmed) de Bruijn automaton.
// A surviving extension that reaches this far on each side can be pumped to
// a bi-infinite configuration.
inline int exactness_margin_bound_1d(const Sft& x) {
    detail::DeBruijn1d a = detail::DeBruijn1d::build(x);
    return static_cast<int>(a.vcount);
}

inline bool exact_1d_empty(const Sft& x) { return !detail::DeBruijn1d::build(x).nonempty(); }

// Result of comparing two subshift languages radius by radius.
// The reported value is D = 2^-n* where n* is the largest verified
// agreement radius; 0 means the languages agree through nmax, which is an
// "equal up to nmax" statement rather than a proof of equality.
struct MetricResult {
    int nmax = 0;
    bool certified = false;         // exact languages were compared
    bool agree_through_nmax = false;
    int agree_radius = -1;          // largest n with agreement, -1 if none
    int divergence_radius = -1;
    std::optional<Pattern> divergence_witness;

    bool value_is_zero() const { return agree_through_nmax; }
    int value_log2_denom() const { return std::max(agree_radius, 0); }

    double value() const {
        if (value_is_zero()) return 0.0;
        double v = 1.0;
        for (int i = 0; i < value_log2_denom(); ++i) v /= 2.0;
        return v;
    }

    std::string value_string() const {
        if (value_is_zero()) return "0";
        if (value_log2_denom() == 0) return "1";
        unsigned long long den = 1ull << value_log2_denom();
        return "1/" + std::to_string(den);
    }
};

namespace detail {

template <typename LangFn>
MetricResult metric_compare(const Sft& x, const Sft& y, int nmax, bool certified, LangFn lang) {
    if (!(x.ctx() == y.ctx())) throw Error("metric: group context mismatch");
    if (!(x.alphabet() == y.alphabet())) throw Error("metric: alphabet mismatch");
    if (nmax < 0) throw Error("metric: nmax must be >= 0");
    MetricResult r;
    r.nmax = nmax;
    r.certified = certified;
    for (int n = 0; n <= nmax; ++n) {
        std::set<Pattern> lx = lang(x, n);
        std::set<Pattern> ly = lang(y, n);
        if (lx == ly) {
            r.agree_radius = n;
            continue;
        }
        r.divergence_radius = n;
        for (const auto& p : lx)
            if (!ly.count(p)) {
                r.divergence_witness = p;
                break;
            }
        if (!r.divergence_witness)
            for (const auto& p : ly)
                if (!lx.count(p)) {
                    r.divergence_witness = p;
                    break;
                }
        return r;
    }
    r.agree_through_nmax = true;
    return r;
}

}  // namespace detail

// The metric D on the space of subshifts, computed from exact languages
// (SFTs over Z). Language agreement is downward closed, so the largest
// agreeing radius is well defined.
inline MetricResult metric_distance(const Sft& x, const Sft& y, int nmax) {
    return detail::metric_compare(x, y, nmax, true, [](const Sft& s, int n) {
        return language_exact_1d(s, n).patterns;
    });
}

// Same comparison over margin-bounded upper approximations, for contexts
// without exact languages. The result is evidence, not a certificate:
// approximations may differ while the true languages agree and vice versa.
inline MetricResult metric_evidence(const Sft& x, const Sft& y, int nmax, int margin) {
    return detail::metric_compare(x, y, nmax, false, [margin](const Sft& s, int n) {
        return language_upper(s, n, margin).patterns;
    });
}

struct SubsetResult {
    Verdict verdict = Verdict::Unknown;
    int margin = 0;
    // For CertifiedNo: a pattern certified in the language of Y containing
    // the forbidden pattern of X with this index.
    std::optional<Pattern> witness;
    int forbidden_index = -1;
};

// Semi-decides Y subset of X (same context and alphabet). CertifiedYes when
// no pattern surviving Y's margin-r admissibility check on B_range(X)
// exhibits a forbidden pattern of X; CertifiedNo when a pattern certified in
// Y's exact language (Z contexts) contains one.
inline SubsetResult subset_semidecide(const Sft& y, const Sft& x, int margin) {
    if (!(x.ctx() == y.ctx())) throw Error("subset: group context mismatch");
    if (!(x.alphabet() == y.alphabet())) throw Error("subset: alphabet mismatch");
    SubsetResult r;
    r.margin = margin;
    int m = x.range();
    LangApprox upper = language_upper(y, m, margin);
    bool clean = true;
    for (const Pattern& q : upper.patterns) {
        for (std::size_t fi = 0; fi < x.forbidden().size() && clean; ++fi) {
            const Pattern& f = x.forbidden()[fi];
            bool match = true;
            for (const auto& [g, sym] : f.cells()) {
                auto v = q.at(g);
                if (!v || *v != sym) {
                    match = false;
                    break;
                }
            }
            if (match) clean = false;
        }
        if (!clean) break;
    }
    if (clean) {
        r.verdict = Verdict::CertifiedYes;
        return r;
    }
    const GroupCtx& ctx = y.ctx();
    if (ctx.kind() == GroupKind::Zd && ctx.dimension() == 1) {
        LangApprox certified = language_exact_1d(y, m);
        for (const Pattern& q : certified.patterns) {
            for (std::size_t fi = 0; fi < x.forbidden().size(); ++fi) {
                if (occurs_in(ctx, x.forbidden()[fi], q)) {
                    r.verdict = Verdict::CertifiedNo;
                    r.witness = q;
                    r.forbidden_index = static_cast<int>(fi);
                    return r;
                }
            }
        }
    }
    r.verdict = Verdict::Unknown;
    return r;
}

}  // namespace symdyn
