#include <catch2/catch_amalgamated.hpp>

#include "symdyn/io.hpp"
#include "helpers.hpp"

using namespace symdyn;
using helpers::binary;
using helpers::golden_mean;
using helpers::pat1d;
using helpers::patz;
using nlohmann::json;

TEST_CASE("group documents round-trip", "[io]") {
    for (const char* text :
         {R"({"type":"zd","d":2})", R"({"type":"free","rank":2})",
          R"({"type":"presented","generators":["a","b"],"relators":["abAB"]})"}) {
        json doc = io::parse_text(text);
        GroupCtx ctx = io::group_from_json(doc);
        CHECK(io::group_from_json(io::group_to_json(ctx)) == ctx);
    }
    CHECK_THROWS_AS(io::group_from_json(io::parse_text(R"({"type":"nope"})")), Error);
    CHECK_THROWS_WITH(io::parse_text("{oops"), Catch::Matchers::ContainsSubstring("byte"));
}

TEST_CASE("sft documents round-trip through presentations", "[io]") {
    json doc = io::parse_text(R"({
        "group": {"type": "zd", "d": 1},
        "alphabet": ["0", "1"],
        "forbidden": [{"support": ["", "a"], "values": ["1", "1"]}]
    })");
    Sft x = io::sft_from_json(doc);
    GroupCtx z1 = GroupCtx::zd(1);
    CHECK(x == golden_mean(z1));
    Sft again = io::sft_from_json(io::sft_to_json(x));
    CHECK(again == x);

    // Inconsistent forbidden presentations are rejected with a diagnostic.
    json bad = io::parse_text(R"({
        "group": {"type": "zd", "d": 1},
        "alphabet": ["0", "1"],
        "forbidden": [{"support": ["a", "aaA"], "values": ["0", "1"]}]
    })");
    CHECK_THROWS_AS(io::sft_from_json(bad), Error);
}

TEST_CASE("wang tile documents compile to Z^2 SFTs", "[io]") {
    json doc = io::parse_text(R"({"tiles": [
        {"n": 0, "e": 1, "s": 0, "w": 1},
        {"n": 0, "e": 2, "s": 0, "w": 2}
    ]})");
    Sft x = io::sft_from_json(doc);
    CHECK(x.ctx().kind() == GroupKind::Zd);
    CHECK(x.ctx().dimension() == 2);
    CHECK(x.alphabet().size() == 2);
    // Horizontally, tile i needs e(i) = w(j): only (0,0) and (1,1) match,
    // so two horizontal mismatches are forbidden; vertically all pairs match.
    CHECK(x.forbidden().size() == 2);
    for (const Pattern& f : x.forbidden()) {
        REQUIRE(f.size() == 2);
        CHECK(f.cells()[1].first == x.ctx().zd_element({1, 0}));
    }
}

TEST_CASE("rule documents parse tables keyed by concatenated symbols", "[io]") {
    GroupCtx z1 = GroupCtx::zd(1);
    json doc = io::parse_text(R"({
        "memory": ["", "a"],
        "domain_alphabet": ["0", "1"],
        "codomain_alphabet": ["0", "1"],
        "table": {"00": "0", "01": "1", "10": "1", "11": "0"}
    })");
    LocalRule rule = io::rule_from_json(doc, z1);
    CHECK(rule.apply({0, 1}) == 1);
    CHECK(rule.apply({1, 1}) == 0);
    LocalRule again = io::rule_from_json(io::rule_to_json(rule), z1);
    CHECK(again.table() == rule.table());
    CHECK(again.memory() == rule.memory());

    json partial = doc;
    partial["table"].erase("01");
    CHECK_THROWS_AS(io::rule_from_json(partial, z1), Error);

    json ambiguous = io::parse_text(R"({
        "memory": ["", "a"],
        "domain_alphabet": ["x", "xx"],
        "codomain_alphabet": ["0"],
        "table": {"xxx": "0"}
    })");
    CHECK_THROWS_AS(io::rule_from_json(ambiguous, z1), Error);
}

TEST_CASE("patterns serialize with canonical-word supports", "[io]") {
    GroupCtx z1 = GroupCtx::zd(1);
    Pattern q = patz(z1, {{-1, 1}, {0, 0}, {2, 1}});
    json doc = io::pattern_to_json(q, binary());
    CHECK(io::pattern_from_json(doc, z1, binary()) == q);
}

TEST_CASE("non-membership certificates seal, verify, and resist tampering", "[io]") {
    GroupCtx z1 = GroupCtx::zd(1);
    Sft golden = golden_mean(z1);
    Pattern q = pat1d(z1, 0, "11");
    NonmembershipResult r = nonmembership_semidecide(golden, q, 4);
    REQUIRE(r.verdict == Verdict::CertifiedYes);
    json cert = io::make_nonmembership_certificate(golden, q, r);

    io::VerifyOutcome ok = io::verify_certificate(cert);
    CHECK(ok.ok);
    CHECK(ok.kind == "non_membership");

    // Any reparse of the dumped form verifies too.
    CHECK(io::verify_certificate(io::parse_text(cert.dump(2))).ok);

    // Tampering with the replay (or any sealed field) must fail.
    json tampered = cert;
    tampered["radius"] = 3;
    CHECK_FALSE(io::verify_certificate(tampered).ok);

    std::string dumped = cert.dump(2);
    std::size_t replay_at = dumped.find("\"replay\"");
    REQUIRE(replay_at != std::string::npos);
    bool all_fail = true;
    for (std::size_t i = replay_at; i < std::min(dumped.size(), replay_at + 200); ++i) {
        std::string mutated = dumped;
        mutated[i] = mutated[i] == 'z' ? 'y' : (mutated[i] + 1);
        bool failed;
        try {
            failed = !io::verify_certificate(io::parse_text(mutated)).ok;
        } catch (const Error&) {
            failed = true;  // parse error counts as failed verification
        }
        all_fail = all_fail && failed;
    }
    CHECK(all_fail);
}

TEST_CASE("containment certificates verify end to end", "[io]") {
    GroupCtx z1 = GroupCtx::zd(1);
    Sft full = helpers::sft_1d(z1, binary(), {});
    std::vector<Symbol> idtable = {0, 1};
    LocalRule id(z1, binary(), binary(), {z1.identity()}, idtable);
    CertifiedLanguage lk = certified_language_1d(full, 1);
    Pattern p = pat1d(z1, 0, "11");
    DetectResult r = proper_containment_detect(full, id, full, lk, p, 8);
    REQUIRE(r.verdict == Verdict::CertifiedYes);

    json cert = io::make_detect_certificate(full, id, full, p, lk, r);
    io::VerifyOutcome outcome = io::verify_certificate(cert);
    CHECK(outcome.ok);
    CHECK(outcome.kind == "proper_containment");

    json wrong = cert;
    wrong["witness_index"] = (r.witness_index + 1) % 8;
    CHECK_FALSE(io::verify_certificate(wrong).ok);
}

TEST_CASE("containment certificates with a false exact-language claim are rejected", "[io]") {
    GroupCtx z1 = GroupCtx::zd(1);
    Sft full = helpers::sft_1d(z1, binary(), {});
    LocalRule id(z1, binary(), binary(), {z1.identity()}, std::vector<Symbol>{0, 1});
    Pattern p = pat1d(z1, 0, "11");

    // A list claiming exact_1d provenance but missing patterns: the detector
    // still finds a dying witness, but verification recomputes the exact
    // language and notices the list is wrong.
    CertifiedLanguage doctored;
    doctored.k = 1;
    doctored.provenance = LkProvenance::Exact1d;
    doctored.patterns = {pat1d(z1, -1, "011"), pat1d(z1, -1, "110")};
    DetectResult r = proper_containment_detect(full, id, full, doctored, p, 8);
    REQUIRE(r.verdict == Verdict::CertifiedYes);
    json cert = io::make_detect_certificate(full, id, full, p, doctored, r);
    io::VerifyOutcome outcome = io::verify_certificate(cert);
    CHECK_FALSE(outcome.ok);
    CHECK(outcome.detail.find("exact language") != std::string::npos);
}

TEST_CASE("point-prefix certificates recompute the greedy extraction", "[io]") {
    GroupCtx z1 = GroupCtx::zd(1);
    Sft golden = golden_mean(z1);
    Pattern prefix = medvedev_zero_witness(golden, 3);
    json cert = io::make_point_prefix_certificate(golden, 3, prefix);
    CHECK(io::verify_certificate(cert).ok);

    json wrong = cert;
    wrong["replay"]["pattern"]["values"][0] = "1";
    CHECK_FALSE(io::verify_certificate(wrong).ok);

    json unknown = cert;
    unknown["kind"] = "mystery";
    CHECK_FALSE(io::verify_certificate(unknown).ok);
}
