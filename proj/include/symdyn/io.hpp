// io.hpp -- JSON wire formats: group/pattern/SFT/rule documents, Wang-tile
// import, language lists, and replayable certificates with tamper-evident
// digests.
#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "symdyn/decision.hpp"
#include "symdyn/group.hpp"
#include "symdyn/morphism.hpp"
#include "symdyn/pattern.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/verdict.hpp"

namespace symdyn::io {

using nlohmann::json;

inline json parse_text(const std::string& text, const std::string& where = "document") {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(where + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

inline void save_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << doc.dump(2) << '\n';
}

inline const json& expect(const json& doc, const char* key, const std::string& what) {
    auto it = doc.find(key);
    if (it == doc.end()) throw Error(what + ": missing key '" + key + "'");
    return *it;
}

// ---- groups ----------------------------------------------------------

inline GroupCtx group_from_json(const json& doc) {
    std::string type = expect(doc, "type", "group document").get<std::string>();
    if (type == "zd") return GroupCtx::zd(expect(doc, "d", "group document").get<int>());
    if (type == "free")
        return GroupCtx::free_group(expect(doc, "rank", "group document").get<int>());
    if (type == "presented") {
        std::vector<char> letters;
        for (const auto& g : expect(doc, "generators", "group document")) {
            std::string name = g.get<std::string>();
            if (name.size() != 1)
                throw Error("group document: generator names must be single letters");
            letters.push_back(name[0]);
        }
        std::vector<std::string> relators;
        for (const auto& r : expect(doc, "relators", "group document"))
            relators.push_back(r.get<std::string>());
        return GroupCtx::presented(std::move(letters), std::move(relators));
    }
    throw Error("group document: unknown type '" + type + "'");
}

inline json group_to_json(const GroupCtx& ctx) {
    json doc;
    switch (ctx.kind()) {
        case GroupKind::Zd:
            doc["type"] = "zd";
            doc["d"] = ctx.dimension();
            break;
        case GroupKind::Free:
            doc["type"] = "free";
            doc["rank"] = ctx.dimension();
            break;
        case GroupKind::Presented: {
            doc["type"] = "presented";
            json gens = json::array();
            for (char c : ctx.letters()) gens.push_back(std::string(1, c));
            doc["generators"] = gens;
            doc["relators"] = ctx.relators();
            break;
        }
    }
    return doc;
}

// ---- alphabets and patterns ------------------------------------------

inline Alphabet alphabet_from_json(const json& doc) {
    std::vector<std::string> symbols;
    for (const auto& s : doc) symbols.push_back(s.get<std::string>());
    return Alphabet(std::move(symbols));
}

inline json alphabet_to_json(const Alphabet& a) { return json(a.names()); }

inline PatternPresentation presentation_from_json(const json& doc, const GroupCtx& ctx,
                                                  const Alphabet& alphabet) {
    const json& support = expect(doc, "support", "pattern document");
    const json& values = expect(doc, "values", "pattern document");
    if (!support.is_array() || !values.is_array() || support.size() != values.size())
        throw Error("pattern document: support and values must be parallel arrays");
    std::vector<PatternPresentation::Cell> cells;
    for (std::size_t i = 0; i < support.size(); ++i) {
        Word w = ctx.parse_word(support[i].get<std::string>());
        Symbol s = alphabet.index_or_throw(values[i].get<std::string>());
        cells.emplace_back(std::move(w), s);
    }
    return PatternPresentation(std::move(cells));
}

inline json presentation_to_json(const PatternPresentation& p, const Alphabet& alphabet) {
    json support = json::array();
    json values = json::array();
    for (const auto& [w, sym] : p.cells()) {
        support.push_back(w.letters());
        values.push_back(alphabet.name(sym));
    }
    return json{{"support", support}, {"values", values}};
}

// Patterns travel as presentations whose support words are canonical forms.
inline Pattern pattern_from_json(const json& doc, const GroupCtx& ctx,
                                 const Alphabet& alphabet) {
    PatternPresentation p = presentation_from_json(doc, ctx, alphabet);
    ConsistencyResult c = consistency_check(ctx, p, 0);
    if (c.verdict == Verdict::CertifiedNo)
        throw Error("pattern document: inconsistent presentation");
    return realize(ctx, p);
}

inline json pattern_to_json(const Pattern& q, const Alphabet& alphabet) {
    json support = json::array();
    json values = json::array();
    for (const auto& [g, sym] : q.cells()) {
        support.push_back(g.word().letters());
        values.push_back(alphabet.name(sym));
    }
    return json{{"support", support}, {"values", values}};
}

// ---- SFT documents (including Wang-tile import) -----------------------

struct WangTile {
    long n, e, s, w;
};

// Compiles a tile set to a Z^2 SFT: alphabet = tile indices, forbidden =
// adjacent edge-color mismatches ("a" points east, "b" points north).
inline Sft wang_to_sft(const std::vector<WangTile>& tiles) {
    if (tiles.empty()) throw Error("wang document: at least one tile required");
    GroupCtx z2 = GroupCtx::zd(2);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < tiles.size(); ++i) names.push_back(std::to_string(i));
    Alphabet alphabet{names};
    std::vector<Pattern> forbidden;
    GroupElement east = z2.zd_element({1, 0});
    GroupElement north = z2.zd_element({0, 1});
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        for (std::size_t j = 0; j < tiles.size(); ++j) {
            if (tiles[i].e != tiles[j].w)
                forbidden.push_back(Pattern({{z2.identity(), static_cast<Symbol>(i)},
                                             {east, static_cast<Symbol>(j)}}));
            if (tiles[i].n != tiles[j].s)
                forbidden.push_back(Pattern({{z2.identity(), static_cast<Symbol>(i)},
                                             {north, static_cast<Symbol>(j)}}));
        }
    }
    return Sft(z2, alphabet, std::move(forbidden));
}

inline Sft sft_from_json(const json& doc, int fuel = 0) {
    if (doc.contains("tiles")) {
        std::vector<WangTile> tiles;
        for (const auto& t : doc["tiles"]) {
            tiles.push_back({expect(t, "n", "wang tile").get<long>(),
                             expect(t, "e", "wang tile").get<long>(),
                             expect(t, "s", "wang tile").get<long>(),
                             expect(t, "w", "wang tile").get<long>()});
        }
        return wang_to_sft(tiles);
    }
    GroupCtx ctx = group_from_json(expect(doc, "group", "sft document"));
    Alphabet alphabet = alphabet_from_json(expect(doc, "alphabet", "sft document"));
    std::vector<PatternPresentation> forbidden;
    if (doc.contains("forbidden"))
        for (const auto& f : doc["forbidden"])
            forbidden.push_back(presentation_from_json(f, ctx, alphabet));
    return sft_build(ctx, alphabet, forbidden, fuel);
}

inline json sft_to_json(const Sft& x) {
    json forbidden = json::array();
    for (const Pattern& f : x.forbidden()) forbidden.push_back(pattern_to_json(f, x.alphabet()));
    return json{{"group", group_to_json(x.ctx())},
                {"alphabet", alphabet_to_json(x.alphabet())},
                {"forbidden", forbidden}};
}

// ---- rule documents ----------------------------------------------------

// Splits a table key into symbol names, concatenated in memory order. The
// split must be unique; ambiguous alphabets are rejected.
inline std::vector<Symbol> split_table_key(const std::string& key, const Alphabet& alphabet,
                                           std::size_t arity) {
    std::vector<std::vector<Symbol>> parses;
    std::vector<Symbol> current;
    std::function<void(std::size_t)> walk = [&](std::size_t pos) {
        if (parses.size() > 1) return;
        if (current.size() == arity) {
            if (pos == key.size()) parses.push_back(current);
            return;
        }
        for (Symbol s = 0; s < alphabet.size(); ++s) {
            const std::string& name = alphabet.name(s);
            if (key.compare(pos, name.size(), name) == 0) {
                current.push_back(s);
                walk(pos + name.size());
                current.pop_back();
            }
        }
    };
    walk(0);
    if (parses.empty())
        throw Error("rule document: table key '" + key + "' does not parse as " +
                    std::to_string(arity) + " symbols");
    if (parses.size() > 1)
        throw Error("rule document: table key '" + key + "' is ambiguous");
    return parses[0];
}

inline LocalRule rule_from_json(const json& doc, const GroupCtx& ctx) {
    Alphabet domain = alphabet_from_json(expect(doc, "domain_alphabet", "rule document"));
    Alphabet codomain = alphabet_from_json(expect(doc, "codomain_alphabet", "rule document"));
    std::vector<GroupElement> memory;
    for (const auto& m : expect(doc, "memory", "rule document"))
        memory.push_back(ctx.canonicalize(ctx.parse_word(m.get<std::string>())));
    const json& table_doc = expect(doc, "table", "rule document");
    std::size_t entries = 1;
    for (std::size_t i = 0; i < memory.size(); ++i)
        entries *= static_cast<std::size_t>(domain.size());
    std::vector<Symbol> table(entries, 0);
    std::vector<bool> seen(entries, false);
    for (const auto& [key, value] : table_doc.items()) {
        std::vector<Symbol> mem = split_table_key(key, domain, memory.size());
        std::size_t idx = 0;
        for (Symbol s : mem) idx = idx * static_cast<std::size_t>(domain.size()) +
                                   static_cast<std::size_t>(s);
        if (seen[idx]) throw Error("rule document: duplicate table key '" + key + "'");
        seen[idx] = true;
        table[idx] = codomain.index_or_throw(value.get<std::string>());
    }
    for (std::size_t i = 0; i < entries; ++i)
        if (!seen[i]) throw Error("rule document: table is not total");
    return LocalRule(ctx, std::move(domain), std::move(codomain), std::move(memory),
                     std::move(table));
}

inline json rule_to_json(const LocalRule& rule) {
    json table;
    std::size_t arity = rule.memory().size();
    std::size_t entries = rule.table().size();
    std::vector<Symbol> mem(arity, 0);
    for (std::size_t idx = 0; idx < entries; ++idx) {
        std::size_t rest = idx;
        for (std::size_t i = arity; i-- > 0;) {
            mem[i] = static_cast<Symbol>(rest % static_cast<std::size_t>(
                                                    rule.domain_alphabet().size()));
            rest /= static_cast<std::size_t>(rule.domain_alphabet().size());
        }
        std::string key;
        for (Symbol s : mem) key += rule.domain_alphabet().name(s);
        table[key] = rule.codomain_alphabet().name(rule.table()[idx]);
    }
    json memory = json::array();
    for (const auto& t : rule.memory()) memory.push_back(t.word().letters());
    return json{{"memory", memory},
                {"domain_alphabet", alphabet_to_json(rule.domain_alphabet())},
                {"codomain_alphabet", alphabet_to_json(rule.codomain_alphabet())},
                {"table", table}};
}

// ---- language lists ----------------------------------------------------

inline CertifiedLanguage lk_from_json(const json& doc, const GroupCtx& ctx,
                                      const Alphabet& alphabet) {
    CertifiedLanguage lk;
    lk.k = expect(doc, "k", "language document").get<int>();
    std::string prov = doc.value("provenance", "user_unsound");
    if (prov == "exact_1d") lk.provenance = LkProvenance::Exact1d;
    else if (prov == "user_certified") lk.provenance = LkProvenance::UserCertified;
    else if (prov == "user_unsound") lk.provenance = LkProvenance::UserUnsound;
    else throw Error("language document: unknown provenance '" + prov + "'");
    for (const auto& p : expect(doc, "patterns", "language document"))
        lk.patterns.push_back(pattern_from_json(p, ctx, alphabet));
    return lk;
}

inline json lk_to_json(const CertifiedLanguage& lk, const Alphabet& alphabet) {
    json patterns = json::array();
    for (const Pattern& p : lk.patterns) patterns.push_back(pattern_to_json(p, alphabet));
    return json{{"k", lk.k}, {"provenance", to_string(lk.provenance)}, {"patterns", patterns}};
}

// ---- refutations --------------------------------------------------------

inline json refutation_to_json(const Refutation& node) {
    if (node.is_leaf()) {
        return json{{"violation", json{{"forbidden", node.violation->forbidden_index},
                                       {"translate", node.violation->translate.word().letters()}}}};
    }
    json children = json::array();
    for (const auto& child : node.children) children.push_back(refutation_to_json(child));
    return json{{"cell", node.cell->word().letters()}, {"children", children}};
}

inline Refutation refutation_from_json(const json& doc, const GroupCtx& ctx) {
    Refutation node;
    if (doc.contains("violation")) {
        const json& v = doc["violation"];
        node.violation = RefutationViolation{
            expect(v, "forbidden", "refutation").get<int>(),
            ctx.canonicalize(ctx.parse_word(expect(v, "translate", "refutation").get<std::string>()))};
        return node;
    }
    node.cell = ctx.canonicalize(ctx.parse_word(expect(doc, "cell", "refutation").get<std::string>()));
    for (const auto& child : expect(doc, "children", "refutation"))
        node.children.push_back(refutation_from_json(child, ctx));
    return node;
}

// ---- certificates --------------------------------------------------------

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string digest_of(json cert) {
    cert.erase("digest");
    std::uint64_t h = fnv1a64(cert.dump());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

inline json seal_certificate(json cert) {
    cert["digest"] = digest_of(cert);
    return cert;
}

inline json make_nonmembership_certificate(const Sft& z, const Pattern& q,
                                           const NonmembershipResult& result) {
    if (result.verdict != Verdict::CertifiedYes || !result.refutation)
        throw Error("certificate: non-membership was not certified");
    json cert{{"kind", "non_membership"},
              {"sft", sft_to_json(z)},
              {"pattern", pattern_to_json(q, z.alphabet())},
              {"radius", result.certified_margin},
              {"replay", json{{"refutation", refutation_to_json(*result.refutation)}}}};
    return seal_certificate(std::move(cert));
}

inline json make_detect_certificate(const Sft& y, const LocalRule& rule, const Sft& x,
                                    const Pattern& p, const CertifiedLanguage& lk,
                                    const DetectResult& result) {
    if (result.verdict != Verdict::CertifiedYes || !result.refutation || !result.witness)
        throw Error("certificate: containment was not certified");
    json cert{{"kind", "proper_containment"},
              {"y", sft_to_json(y)},
              {"rule", rule_to_json(rule)},
              {"x", sft_to_json(x)},
              {"p", pattern_to_json(p, x.alphabet())},
              {"language", lk_to_json(lk, y.alphabet())},
              {"witness_index", result.witness_index},
              {"margin", result.margin},
              {"replay", json{{"witness", pattern_to_json(*result.witness, y.alphabet())},
                              {"refutation", refutation_to_json(*result.refutation)}}}};
    return seal_certificate(std::move(cert));
}

inline json make_point_prefix_certificate(const Sft& x, int n, const Pattern& prefix) {
    json cert{{"kind", "point_prefix"},
              {"sft", sft_to_json(x)},
              {"n", n},
              {"replay", json{{"pattern", pattern_to_json(prefix, x.alphabet())}}}};
    return seal_certificate(std::move(cert));
}

struct VerifyOutcome {
    bool ok = false;
    std::string kind;
    std::string detail;
};

// Re-verifies a certificate without searching: digest check, then a
// deterministic replay of the claimed evidence.
inline VerifyOutcome verify_certificate(const json& cert) {
    VerifyOutcome out;
    try {
        if (!cert.is_object()) return {false, "", "certificate is not a JSON object"};
        if (!cert.contains("kind") || !cert.contains("digest"))
            return {false, "", "certificate lacks kind or digest"};
        out.kind = cert["kind"].get<std::string>();
        if (digest_of(cert) != cert["digest"].get<std::string>())
            return {false, out.kind, "digest mismatch (certificate was modified)"};

        if (out.kind == "non_membership") {
            Sft z = sft_from_json(expect(cert, "sft", "certificate"));
            Pattern q = pattern_from_json(expect(cert, "pattern", "certificate"), z.ctx(),
                                          z.alphabet());
            int radius = expect(cert, "radius", "certificate").get<int>();
            Refutation refutation = refutation_from_json(
                expect(expect(cert, "replay", "certificate"), "refutation", "certificate"),
                z.ctx());
            std::string why;
            if (!verify_refutation(z, q, radius, refutation, &why))
                return {false, out.kind, "refutation replay failed: " + why};
            out.ok = true;
            out.detail = "pattern certified outside the language at margin " +
                         std::to_string(radius);
            return out;
        }

        if (out.kind == "proper_containment") {
            Sft y = sft_from_json(expect(cert, "y", "certificate"));
            Sft x = sft_from_json(expect(cert, "x", "certificate"));
            LocalRule rule = rule_from_json(expect(cert, "rule", "certificate"), y.ctx());
            Pattern p = pattern_from_json(expect(cert, "p", "certificate"), x.ctx(),
                                          x.alphabet());
            CertifiedLanguage lk = lk_from_json(expect(cert, "language", "certificate"),
                                                y.ctx(), y.alphabet());
            const json& replay = expect(cert, "replay", "certificate");
            Pattern witness = pattern_from_json(expect(replay, "witness", "certificate"),
                                                y.ctx(), y.alphabet());
            int wi = expect(cert, "witness_index", "certificate").get<int>();
            int margin = expect(cert, "margin", "certificate").get<int>();
            if (wi < 0 || wi >= static_cast<int>(lk.patterns.size()))
                return {false, out.kind, "witness index out of range"};
            if (!(lk.patterns[static_cast<std::size_t>(wi)] == witness))
                return {false, out.kind, "witness does not match the language list"};
            if (lk.provenance == LkProvenance::Exact1d) {
                CertifiedLanguage fresh = certified_language_1d(y, lk.k);
                if (std::set<Pattern>(fresh.patterns.begin(), fresh.patterns.end()) !=
                    std::set<Pattern>(lk.patterns.begin(), lk.patterns.end()))
                    return {false, out.kind, "language list does not match the exact language"};
            }
            Sft yp = build_yp(y, rule, x, p);
            Refutation refutation =
                refutation_from_json(expect(replay, "refutation", "certificate"), y.ctx());
            std::string why;
            if (!verify_refutation(yp, witness, margin, refutation, &why))
                return {false, out.kind, "refutation replay failed: " + why};
            out.ok = true;
            out.detail = "membership of p certified via witness " + std::to_string(wi) +
                         " at margin " + std::to_string(margin);
            if (lk.provenance == LkProvenance::UserUnsound)
                out.detail += " (language list uncertified: claim is conditional)";
            return out;
        }

        if (out.kind == "point_prefix") {
            Sft x = sft_from_json(expect(cert, "sft", "certificate"));
            int n = expect(cert, "n", "certificate").get<int>();
            Pattern claimed = pattern_from_json(
                expect(expect(cert, "replay", "certificate"), "pattern", "certificate"),
                x.ctx(), x.alphabet());
            Pattern recomputed = medvedev_zero_witness(x, n);
            if (!(claimed == recomputed))
                return {false, out.kind, "prefix does not match the greedy extraction"};
            out.ok = true;
            out.detail = "point prefix replayed on B_" + std::to_string(n);
            return out;
        }

        return {false, out.kind, "unknown certificate kind"};
    } catch (const std::exception& e) {
        return {false, out.kind, std::string("verification error: ") + e.what()};
    }
}

}  // namespace symdyn::io
