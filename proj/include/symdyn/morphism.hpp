// morphism.hpp -- Curtis-Lyndon-Hedlund local rules, the pattern-level map
// of a morphism, exact pullbacks of SFTs, the X_p / Y_p constructions, and
// the lift of an SFT to the free group on its generating set.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "symdyn/group.hpp"
#include "symdyn/pattern.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/verdict.hpp"

namespace symdyn {

// A local rule: a nonempty ordered memory set T and a total table
// B^T -> A. Table entries are indexed mixed-radix with the first memory
// cell most significant, matching the wire format where keys concatenate
// symbols in memory order.
class LocalRule {
public:
    LocalRule(GroupCtx ctx, Alphabet domain, Alphabet codomain,
              std::vector<GroupElement> memory, std::vector<Symbol> table)
        : ctx_(std::move(ctx)),
          domain_(std::move(domain)),
          codomain_(std::move(codomain)),
          memory_(std::move(memory)),
          table_(std::move(table)) {
        if (memory_.empty()) throw Error("local rule: memory set must be nonempty");
        std::set<GroupElement> dedup(memory_.begin(), memory_.end());
        if (dedup.size() != memory_.size()) throw Error("local rule: duplicate memory cell");
        std::size_t expected = 1;
        for (std::size_t i = 0; i < memory_.size(); ++i)
            expected *= static_cast<std::size_t>(domain_.size());
        if (table_.size() != expected)
            throw Error("local rule: table must be total (expected " + std::to_string(expected) +
                        " entries, got " + std::to_string(table_.size()) + ")");
        for (Symbol s : table_)
            if (s < 0 || s >= codomain_.size())
                throw Error("local rule: table value outside the codomain alphabet");
    }

    const GroupCtx& ctx() const { return ctx_; }
    const Alphabet& domain_alphabet() const { return domain_; }
    const Alphabet& codomain_alphabet() const { return codomain_; }
    const std::vector<GroupElement>& memory() const { return memory_; }
    const std::vector<Symbol>& table() const { return table_; }

    Symbol apply(const std::vector<Symbol>& memory_values) const {
        if (memory_values.size() != memory_.size())
            throw Error("local rule: wrong number of memory values");
        std::size_t idx = 0;
        for (Symbol s : memory_values) {
            if (s < 0 || s >= domain_.size())
                throw Error("local rule: memory value outside the domain alphabet");
            idx = idx * static_cast<std::size_t>(domain_.size()) + static_cast<std::size_t>(s);
        }
        return table_[idx];
    }

private:
    GroupCtx ctx_;
    Alphabet domain_;
    Alphabet codomain_;
    std::vector<GroupElement> memory_;
    std::vector<Symbol> table_;
};

// The pattern map: Phi(q) has support {g : gT subset E} and
// Phi(q)(g) = table((g^-1 q)|_T). The support can be empty.
inline Pattern phi_pattern(const LocalRule& rule, const Pattern& q) {
    const GroupCtx& ctx = rule.ctx();
    if (q.empty()) return Pattern{};
    GroupElement t0_inv = ctx.inv(rule.memory().front());
    std::set<GroupElement> candidates;
    for (const auto& [e, sym] : q.cells()) candidates.insert(ctx.mul(e, t0_inv));
    std::vector<Pattern::Cell> cells;
    for (const auto& g : candidates) {
        std::vector<Symbol> mem;
        mem.reserve(rule.memory().size());
        bool inside = true;
        for (const auto& t : rule.memory()) {
            auto v = q.at(ctx.mul(g, t));
            if (!v) {
                inside = false;
                break;
            }
            mem.push_back(*v);
        }
        if (inside) cells.emplace_back(g, rule.apply(mem));
    }
    return Pattern(std::move(cells));
}

// The exact pullback of an SFT under a local rule: for each forbidden
// pattern f with support F, every pattern on F*T whose image extends f is
// forbidden. Supports are taken as F*T exactly; redundant forbidden
// patterns are kept.
inline Sft pullback_sft(const LocalRule& rule, const Sft& x) {
    const GroupCtx& ctx = rule.ctx();
    if (!(ctx == x.ctx())) throw Error("pullback: group context mismatch");
    if (!(rule.codomain_alphabet() == x.alphabet()))
        throw Error("pullback: rule codomain does not match the SFT alphabet");
    std::vector<Pattern> forbidden;
    for (const Pattern& f : x.forbidden()) {
        if (f.empty()) {
            forbidden.push_back(f);
            continue;
        }
        std::set<GroupElement> support;
        for (const auto& [h, sym] : f.cells())
            for (const auto& t : rule.memory()) support.insert(ctx.mul(h, t));
        std::vector<GroupElement> cells(support.begin(), support.end());
        ExtensionStream stream(Pattern{}, cells, rule.domain_alphabet());
        while (auto q = stream.next()) {
            bool image_matches = true;
            for (const auto& [h, sym] : f.cells()) {
                std::vector<Symbol> mem;
                mem.reserve(rule.memory().size());
                for (const auto& t : rule.memory()) mem.push_back(*q->at(ctx.mul(h, t)));
                if (rule.apply(mem) != sym) {
                    image_matches = false;
                    break;
                }
            }
            if (image_matches) forbidden.push_back(*q);
        }
    }
    return Sft(ctx, rule.domain_alphabet(), std::move(forbidden));
}

// X_p: the sub-SFT of X additionally forbidding p.
inline Sft forbid_additionally(const Sft& x, const Pattern& p) {
    for (const auto& [g, sym] : p.cells())
        if (sym < 0 || sym >= x.alphabet().size())
            throw Error("forbid_additionally: pattern symbol outside the alphabet");
    std::vector<Pattern> forbidden = x.forbidden();
    forbidden.push_back(p);
    return Sft(x.ctx(), x.alphabet(), std::move(forbidden));
}

// Y_p = Y intersect phi^-1(X_p), as an SFT over the domain alphabet.
inline Sft build_yp(const Sft& y, const LocalRule& rule, const Sft& x, const Pattern& p) {
    if (!(y.ctx() == x.ctx()) || !(y.ctx() == rule.ctx()))
        throw Error("build_yp: group context mismatch");
    if (!(rule.domain_alphabet() == y.alphabet()))
        throw Error("build_yp: rule domain does not match Y's alphabet");
    if (!(rule.codomain_alphabet() == x.alphabet()))
        throw Error("build_yp: rule codomain does not match X's alphabet");
    Sft pulled = pullback_sft(rule, forbid_additionally(x, p));
    std::vector<Pattern> forbidden = y.forbidden();
    for (const auto& f : pulled.forbidden()) forbidden.push_back(f);
    return Sft(y.ctx(), y.alphabet(), std::move(forbidden));
}

// One stage of the free-group lift: a finite set of forbidden pattern
// presentations over F(S). Stages are monotone in the fuel and their induced
// subshifts over F(S) decrease to the lifted subshift.
struct LiftStage {
    int fuel = 0;
    std::vector<PatternPresentation> forbidden;
};

// Enumerates forbidden presentations for the lift of an SFT to the free
// group on its generating set: the SFT's own forbidden patterns
// reinterpreted with their canonical-word supports, plus, for every pair of
// words certified equal within the fuel, all patterns assigning the pair
// different symbols. Pairs are drawn from W_fuel.
class LiftEnumerator {
public:
    explicit LiftEnumerator(const Sft& z)
        : z_(z), free_ctx_(GroupCtx::free_group_on(z.ctx().letters())) {
        for (const Pattern& f : z_.forbidden()) {
            std::vector<PatternPresentation::Cell> cells;
            cells.reserve(f.size());
            for (const auto& [g, sym] : f.cells()) cells.emplace_back(g.word(), sym);
            reinterpreted_.emplace_back(std::move(cells));
        }
        std::sort(reinterpreted_.begin(), reinterpreted_.end());
    }

    const GroupCtx& free_ctx() const { return free_ctx_; }
    const Alphabet& alphabet() const { return z_.alphabet(); }

    LiftStage stage(int fuel) const {
        if (fuel < 0) throw Error("lift stage: fuel must be >= 0");
        std::set<PatternPresentation> acc(reinterpreted_.begin(), reinterpreted_.end());
        std::vector<Word> words = z_.ctx().words_upto(fuel);
        for (std::size_t i = 0; i < words.size(); ++i) {
            for (std::size_t j = i + 1; j < words.size(); ++j) {
                if (z_.ctx().equals_semi(words[i], words[j], fuel).verdict !=
                    Verdict::CertifiedYes)
                    continue;
                for (Symbol s = 0; s < z_.alphabet().size(); ++s) {
                    for (Symbol t = 0; t < z_.alphabet().size(); ++t) {
                        if (s == t) continue;
                        acc.insert(PatternPresentation(
                            {{words[i], s}, {words[j], t}}));
                    }
                }
            }
        }
        LiftStage out;
        out.fuel = fuel;
        out.forbidden.assign(acc.begin(), acc.end());
        return out;
    }

    // The stage-f approximation as an SFT over F(S). Presentations that are
    // inconsistent over the free group (both words reduce to the same free
    // element) cannot match any configuration and are dropped.
    Sft stage_sft(int fuel) const {
        LiftStage st = stage(fuel);
        std::vector<Pattern> forbidden;
        for (const auto& p : st.forbidden) {
            if (consistency_check(free_ctx_, p, 0).verdict == Verdict::CertifiedYes)
                forbidden.push_back(realize(free_ctx_, p));
        }
        return Sft(free_ctx_, z_.alphabet(), std::move(forbidden));
    }

private:
    Sft z_;
    GroupCtx free_ctx_;
    std::vector<PatternPresentation> reinterpreted_;
};

}  // namespace symdyn
