// decision.hpp -- the three algorithmic cores: the non-membership
// semi-decision for a given SFT, the proper-containment detector certifying
// language membership, and the greedy extraction of a computable
// configuration prefix from a decidable-language oracle.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symdyn/group.hpp"
#include "symdyn/morphism.hpp"
#include "symdyn/pattern.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/verdict.hpp"

namespace symdyn {

struct NonmembershipResult {
    // CertifiedYes: q is certified outside the language (refutation at
    // certified_margin). Unknown: a surviving extension exists at every
    // margin up to max_margin (last witness attached).
    Verdict verdict = Verdict::Unknown;
    int max_margin = 0;
    int certified_margin = -1;
    std::shared_ptr<const Refutation> refutation;
    std::optional<Pattern> witness;
};

// Sweeps margins 0..max_margin; certifies q not in the language of z at the
// first margin whose extension search is exhausted. Monotonicity of
// locally_admissible makes the certified margin minimal.
inline NonmembershipResult nonmembership_semidecide(const Sft& z, const Pattern& q,
                                                    int max_margin) {
    if (max_margin < 0) throw Error("nonmembership: max_margin must be >= 0");
    NonmembershipResult out;
    out.max_margin = max_margin;
    for (int r = 0; r <= max_margin; ++r) {
        AdmissResult res = locally_admissible(z, q, r);
        if (res.verdict == Verdict::CertifiedNo) {
            out.verdict = Verdict::CertifiedYes;
            out.certified_margin = r;
            out.refutation = res.refutation;
            out.witness.reset();
            return out;
        }
        out.witness = res.witness;
    }
    out.verdict = Verdict::Unknown;
    return out;
}

enum class LkProvenance { Exact1d, UserCertified, UserUnsound };

inline const char* to_string(LkProvenance p) {
    switch (p) {
        case LkProvenance::Exact1d: return "exact_1d";
        case LkProvenance::UserCertified: return "user_certified";
        default: return "user_unsound";
    }
}

// A claimed exact language L_{B_k}(Y) with its provenance. The detector is
// only sound when the list really is the exact language.
struct CertifiedLanguage {
    int k = 0;
    LkProvenance provenance = LkProvenance::UserUnsound;
    std::vector<Pattern> patterns;
};

inline CertifiedLanguage certified_language_1d(const Sft& y, int k) {
    CertifiedLanguage lk;
    lk.k = k;
    lk.provenance = LkProvenance::Exact1d;
    const auto& lang = language_exact_1d(y, k).patterns;
    lk.patterns.assign(lang.begin(), lang.end());
    return lk;
}

struct DetectResult {
    // CertifiedYes: p is in the language of X (witnessed by a pattern of
    // L_{B_k}(Y) certified outside the language of Y_p). Unknown: budget
    // exhausted; no converse meaning without further hypotheses.
    Verdict verdict = Verdict::Unknown;
    int budget = 0;
    bool unsound_source = false;
    int witness_index = -1;
    std::optional<Pattern> witness;
    int margin = -1;
    std::shared_ptr<const Refutation> refutation;
};

// Detects p in the language of X by building Y_p and dovetailing
// non-membership searches over every pattern of the certified language:
// round-robin, each instance's margin incremented by one per round, ties
// broken by instance index. Budget counts margin units.
inline DetectResult proper_containment_detect(const Sft& y, const LocalRule& rule, const Sft& x,
                                              const CertifiedLanguage& lk, const Pattern& p,
                                              int budget, bool allow_unsound = false) {
    if (budget < 0) throw Error("detect: budget must be >= 0");
    if (lk.provenance == LkProvenance::UserUnsound && !allow_unsound)
        throw Error(
            "detect: language list is not certified; pass the unsound override to use it "
            "anyway");
    DetectResult out;
    out.budget = budget;
    out.unsound_source = lk.provenance == LkProvenance::UserUnsound;
    Sft yp = build_yp(y, rule, x, p);
    for (int margin = 0; margin <= budget; ++margin) {
        for (std::size_t i = 0; i < lk.patterns.size(); ++i) {
            AdmissResult res = locally_admissible(yp, lk.patterns[i], margin);
            if (res.verdict == Verdict::CertifiedNo) {
                out.verdict = Verdict::CertifiedYes;
                out.witness_index = static_cast<int>(i);
                out.witness = lk.patterns[i];
                out.margin = margin;
                out.refutation = res.refutation;
                return out;
            }
        }
    }
    out.verdict = Verdict::Unknown;
    return out;
}

enum class OracleSource { Exact1d, UserList, External };

// A total membership oracle for a decidable language. Answers must be
// consistent under restriction: if q is in, every restriction of q is in.
struct LanguageOracle {
    OracleSource source = OracleSource::External;
    std::function<bool(const Pattern&)> query;
};

// Oracle backed by the exact 1d language, with per-radius caching.
inline LanguageOracle exact_1d_oracle(const Sft& x) {
    struct State {
        Sft sft;
        std::map<int, std::set<Pattern>> langs;
    };
    auto state = std::make_shared<State>(State{x, {}});
    LanguageOracle oracle;
    oracle.source = OracleSource::Exact1d;
    oracle.query = [state](const Pattern& q) -> bool {
        int m = q.radius();
        auto it = state->langs.find(m);
        if (it == state->langs.end())
            it = state->langs.emplace(m, language_exact_1d(state->sft, m).patterns).first;
        for (const Pattern& member : it->second) {
            bool ok = true;
            for (const auto& [g, sym] : q.cells()) {
                auto v = member.at(g);
                if (!v || *v != sym) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
        return false;
    };
    return oracle;
}

// Oracle backed by an explicit list of patterns: q is in iff some member
// restricts to q.
inline LanguageOracle list_oracle(std::vector<Pattern> members) {
    auto shared = std::make_shared<std::vector<Pattern>>(std::move(members));
    LanguageOracle oracle;
    oracle.source = OracleSource::UserList;
    oracle.query = [shared](const Pattern& q) -> bool {
        for (const Pattern& member : *shared) {
            bool ok = true;
            for (const auto& [g, sym] : q.cells()) {
                auto v = member.at(g);
                if (!v || *v != sym) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
        return false;
    };
    return oracle;
}

// Fills B_n cell by cell in canonical order, always choosing the least
// symbol the oracle keeps in the language. The result for n is the
// restriction of the result for n+1 because the canonical order of B_{n+1}
// begins with the cells of B_n.
inline Pattern greedy_point_extract(const LanguageOracle& oracle, int n, const GroupCtx& ctx,
                                    const Alphabet& alphabet) {
    if (n < 0) throw Error("greedy extract: n must be >= 0");
    if (!oracle.query) throw Error("greedy extract: oracle has no query function");
    if (!oracle.query(Pattern{}))
        throw Error("greedy extract: oracle violation (empty pattern reported out)");
    std::vector<GroupElement> cells = ctx.ball(n);
    std::vector<Pattern::Cell> chosen;
    chosen.reserve(cells.size());
    for (const auto& g : cells) {
        bool placed = false;
        for (Symbol s = 0; s < alphabet.size() && !placed; ++s) {
            std::vector<Pattern::Cell> candidate = chosen;
            candidate.emplace_back(g, s);
            if (oracle.query(Pattern(std::move(candidate)))) {
                chosen.emplace_back(g, s);
                placed = true;
            }
        }
        if (!placed)
            throw Error(
                "greedy extract: oracle violation (a partial pattern in the language has no "
                "one-cell extension in the language)");
    }
    return Pattern(std::move(chosen));
}

// Prefix of a single computable configuration of a nonempty SFT over Z with
// decidable (exact) language: the greedy extraction against the exact
// oracle. Witnesses that the SFT has zero Medvedev degree.
inline Pattern medvedev_zero_witness(const Sft& x, int n) {
    if (x.ctx().kind() != GroupKind::Zd || x.ctx().dimension() != 1)
        throw Error("medvedev witness: requires an SFT over Z");
    if (exact_1d_empty(x))
        throw Error("medvedev witness: the SFT is empty (no configuration exists)");
    return greedy_point_extract(exact_1d_oracle(x), n, x.ctx(), x.alphabet());
}

}  // namespace symdyn
