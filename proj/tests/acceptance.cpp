// Acceptance suite: runs every acceptance criterion end to end and prints
// one pass/fail line per criterion. Exits nonzero when any criterion fails.

#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "symdyn/cli.hpp"
#include "symdyn/decision.hpp"
#include "symdyn/io.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

using namespace symdyn;
using helpers::binary;
using helpers::golden_mean;
using helpers::pat1d;
using helpers::patz;
using helpers::sft_1d;
using helpers::ternary;
using nlohmann::json;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("criterion %2d %-4s %s%s%s\n", number, ok ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

LocalRule table_rule(const GroupCtx& ctx, const Alphabet& dom, const Alphabet& cod,
                     std::vector<long> memory_offsets, std::vector<Symbol> table) {
    std::vector<GroupElement> memory;
    for (long t : memory_offsets) memory.push_back(ctx.zd_element({t}));
    return LocalRule(ctx, dom, cod, std::move(memory), std::move(table));
}

bool exact_member_1d(const Sft& x, const Pattern& q) {
    for (const Pattern& member : language_exact_1d(x, q.radius()).patterns) {
        bool fits = true;
        for (const auto& [g, sym] : q.cells())
            if (member.at(g) != sym) {
                fits = false;
                break;
            }
        if (fits) return true;
    }
    return false;
}

// --- criterion 1: ball counts --------------------------------------------

bool criterion_ball_counts(std::string& detail) {
    GroupCtx z2 = GroupCtx::zd(2);
    for (int n = 0; n <= 6; ++n) {
        long long expected = 2ll * n * n + 2 * n + 1;
        if (static_cast<long long>(z2.ball(n).size()) != expected) {
            detail = "Z^2 ball mismatch at n=" + std::to_string(n);
            return false;
        }
    }
    GroupCtx f2 = GroupCtx::free_group(2);
    for (int n = 0; n <= 5; ++n) {
        // 1 + 2k((2k-1)^n - 1)/(2k-2) with k = 2.
        long long pow = 1;
        for (int i = 0; i < n; ++i) pow *= 3;
        long long expected = 1 + 4 * (pow - 1) / 2;
        if (static_cast<long long>(f2.ball(n).size()) != expected) {
            detail = "F_2 ball mismatch at n=" + std::to_string(n);
            return false;
        }
    }
    return true;
}

// --- criterion 2: golden-mean language ------------------------------------

bool criterion_golden_language(std::string& detail) {
    GroupCtx z1 = GroupCtx::zd(1);
    Sft golden = golden_mean(z1);
    std::vector<std::size_t> fib = {2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
    for (int len = 1; len <= 10; ++len) {
        if (exact_words_1d(golden, len).size() != fib[static_cast<std::size_t>(len - 1)]) {
            detail = "word count mismatch at length " + std::to_string(len);
            return false;
        }
    }
    int bound = exactness_margin_bound_1d(golden);
    for (int n = 0; n <= 3; ++n) {
        for (int margin : {bound, bound + 1}) {
            if (language_upper(golden, n, margin).patterns !=
                language_exact_1d(golden, n).patterns) {
                detail = "upper != exact at n=" + std::to_string(n) +
                         " margin=" + std::to_string(margin);
                return false;
            }
        }
    }
    return true;
}

// --- criterion 3: pattern map correctness ----------------------------------

bool criterion_phi(std::string& detail) {
    std::mt19937 rng(20250809);
    int instances = 0;
    for (const GroupCtx& ctx : {GroupCtx::zd(1), GroupCtx::free_group(2)}) {
        auto b3 = ctx.ball(3);
        auto b2 = ctx.ball(2);
        for (int trial = 0; trial < 100; ++trial, ++instances) {
            // Rule with |T| <= 3 inside B_2 over a binary alphabet.
            std::set<GroupElement> mem_set;
            int want = 1 + static_cast<int>(rng() % 3);
            while (static_cast<int>(mem_set.size()) < want)
                mem_set.insert(b2[rng() % b2.size()]);
            std::vector<GroupElement> memory(mem_set.begin(), mem_set.end());
            std::size_t entries = 1;
            for (std::size_t i = 0; i < memory.size(); ++i) entries *= 2;
            std::vector<Symbol> table;
            for (std::size_t i = 0; i < entries; ++i)
                table.push_back(static_cast<int>(rng() % 2));
            LocalRule rule(ctx, binary(), binary(), memory, table);

            std::vector<Pattern::Cell> cells;
            std::set<GroupElement> used;
            int cellcount = 1 + static_cast<int>(rng() % 6);
            for (int i = 0; i < 3 * cellcount && static_cast<int>(cells.size()) < cellcount;
                 ++i) {
                const GroupElement& g = b3[rng() % b3.size()];
                if (used.insert(g).second)
                    cells.emplace_back(g, static_cast<int>(rng() % 2));
            }
            Pattern q(cells);
            Pattern image = phi_pattern(rule, q);

            // Cell-by-cell against the definition.
            std::set<GroupElement> support;
            for (const auto& [e, sym] : q.cells()) {
                for (const auto& t : rule.memory()) {
                    GroupElement g = ctx.mul(e, ctx.inv(t));
                    bool inside = true;
                    std::vector<Symbol> mem;
                    for (const auto& t2 : rule.memory()) {
                        auto v = q.at(ctx.mul(g, t2));
                        if (!v) {
                            inside = false;
                            break;
                        }
                        mem.push_back(*v);
                    }
                    if (!inside) continue;
                    support.insert(g);
                    if (image.at(g) != rule.apply(mem)) {
                        detail = "cell value mismatch";
                        return false;
                    }
                }
            }
            if (support.size() != image.size()) {
                detail = "support mismatch";
                return false;
            }
            const GroupElement& g = b2[rng() % b2.size()];
            if (!(phi_pattern(rule, translate(ctx, g, q)) == translate(ctx, g, image))) {
                detail = "equivariance failed";
                return false;
            }
        }
    }
    detail = std::to_string(instances) + " instances";
    return true;
}

// --- criterion 4: pullback oracle ------------------------------------------

bool criterion_pullback(std::string& detail) {
    GroupCtx z1 = GroupCtx::zd(1);
    std::mt19937 rng(40404);
    int checked = 0;
    for (int instance = 0; instance < 50; ++instance) {
        int dsize = 2 + static_cast<int>(rng() % 2);
        int csize = 2 + static_cast<int>(rng() % 2);
        std::vector<std::string> dnames, cnames;
        for (int i = 0; i < dsize; ++i) dnames.push_back(std::to_string(i));
        for (int i = 0; i < csize; ++i) cnames.push_back(std::to_string(i));
        Alphabet dom{dnames}, cod{cnames};

        std::vector<long> offsets = rng() % 2 ? std::vector<long>{0}
                                              : std::vector<long>{0, 1};
        std::size_t entries = 1;
        for (std::size_t i = 0; i < offsets.size(); ++i)
            entries *= static_cast<std::size_t>(dsize);
        std::vector<Symbol> table;
        for (std::size_t i = 0; i < entries; ++i)
            table.push_back(static_cast<int>(rng() % static_cast<unsigned>(csize)));
        LocalRule rule = table_rule(z1, dom, cod, offsets, table);
        long tmax = offsets.back();

        int nf = 1 + static_cast<int>(rng() % 2);
        std::vector<std::string> fwords;
        for (int i = 0; i < nf; ++i) {
            std::string w;
            int len = 1 + static_cast<int>(rng() % 2);
            for (int j = 0; j < len; ++j)
                w.push_back(static_cast<char>('0' + rng() % static_cast<unsigned>(csize)));
            fwords.push_back(w);
        }
        Sft x = sft_1d(z1, cod, fwords);
        Sft pulled = pullback_sft(rule, x);

        std::vector<oracles::GappyWord> xforb;
        for (const auto& w : fwords) {
            oracles::GappyWord f;
            for (std::size_t i = 0; i < w.size(); ++i)
                f.emplace_back(static_cast<int>(i), w[i] - '0');
            xforb.push_back(f);
        }

        int len = 1 + static_cast<int>(rng() % 3);
        std::vector<int> w(static_cast<std::size_t>(len), 0);
        std::function<bool(int)> each = [&](int pos) -> bool {
            if (pos < len) {
                for (int s = 0; s < dsize; ++s) {
                    w[static_cast<std::size_t>(pos)] = s;
                    if (!each(pos + 1)) return false;
                }
                return true;
            }
            std::vector<Pattern::Cell> cells;
            for (int i = 0; i < len; ++i)
                cells.emplace_back(z1.zd_element({static_cast<long>(i)}),
                                   w[static_cast<std::size_t>(i)]);
            Pattern q{cells};
            for (int r = 0; r <= 1; ++r) {
                int n = q.radius();
                int lo = -(n + r), hi = n + r;
                std::vector<int> window(static_cast<std::size_t>(hi - lo + 1), -1);
                for (int i = 0; i < len; ++i)
                    window[static_cast<std::size_t>(i - lo)] = w[static_cast<std::size_t>(i)];
                bool survivor = false;
                std::function<void(int)> assign = [&](int pos2) {
                    if (survivor) return;
                    if (pos2 == static_cast<int>(window.size())) {
                        std::vector<int> image;
                        for (int g = lo; g + static_cast<int>(tmax) <= hi; ++g) {
                            std::vector<Symbol> mem;
                            for (long t : offsets)
                                mem.push_back(
                                    window[static_cast<std::size_t>(g + t - lo)]);
                            image.push_back(rule.apply(mem));
                        }
                        if (oracles::window_avoids(image, xforb)) survivor = true;
                        return;
                    }
                    if (window[static_cast<std::size_t>(pos2)] >= 0) {
                        assign(pos2 + 1);
                        return;
                    }
                    for (int s = 0; s < dsize && !survivor; ++s) {
                        window[static_cast<std::size_t>(pos2)] = s;
                        assign(pos2 + 1);
                        window[static_cast<std::size_t>(pos2)] = -1;
                    }
                };
                assign(0);
                if ((locally_admissible(pulled, q, r).verdict == Verdict::Unknown) !=
                    survivor)
                    return false;
                ++checked;
            }
            return true;
        };
        if (!each(0)) {
            detail = "mismatch in instance " + std::to_string(instance);
            return false;
        }
    }
    detail = std::to_string(checked) + " (word, margin) cases across 50 instances";
    return true;
}

// --- criterion 5: Lemma 3.2 equivalence ------------------------------------

struct LemmaInstance {
    Sft y;
    LocalRule rule;
    Sft x;
    Pattern p;
};

std::vector<LemmaInstance> lemma_suite(const GroupCtx& z1) {
    Alphabet bin = binary();
    Alphabet ter = ternary();
    Sft full = sft_1d(z1, bin, {});
    Sft golden = golden_mean(z1);
    Sft alt = sft_1d(z1, bin, {"00", "11"});
    Sft no101 = sft_1d(z1, bin, {"101"});
    Sft tfull = sft_1d(z1, ter, {});
    Sft tno22 = sft_1d(z1, ter, {"22"});

    LocalRule id = table_rule(z1, bin, bin, {0}, {0, 1});
    LocalRule notr = table_rule(z1, bin, bin, {0}, {1, 0});
    LocalRule const0 = table_rule(z1, bin, bin, {0}, {0, 0});
    LocalRule xorr = table_rule(z1, bin, bin, {0, 1}, {0, 1, 1, 0});
    LocalRule andr = table_rule(z1, bin, bin, {0, 1}, {0, 0, 0, 1});
    LocalRule orr = table_rule(z1, bin, bin, {0, 1}, {0, 1, 1, 1});
    LocalRule proj = table_rule(z1, ter, bin, {0}, {0, 1, 1});

    auto w = [&](const char* s) { return pat1d(z1, 0, s); };
    std::vector<LemmaInstance> suite;
    suite.push_back({full, id, full, w("11")});
    suite.push_back({full, id, full, w("0")});
    suite.push_back({full, id, golden, w("00")});
    suite.push_back({golden, id, full, w("00")});
    suite.push_back({golden, id, full, w("101")});
    suite.push_back({alt, id, full, w("01")});
    suite.push_back({no101, id, full, w("11")});
    suite.push_back({full, xorr, golden, w("1")});
    suite.push_back({full, xorr, full, w("11")});
    suite.push_back({golden, xorr, full, w("0")});
    suite.push_back({full, andr, full, w("101")});
    suite.push_back({full, andr, golden, w("1")});
    suite.push_back({full, orr, full, w("00")});
    suite.push_back({alt, xorr, full, w("1")});
    suite.push_back({golden, notr, golden, w("0")});
    suite.push_back({full, const0, full, w("1")});
    suite.push_back({golden, const0, full, w("1")});
    suite.push_back({full, const0, golden, w("0")});
    suite.push_back({tfull, proj, golden, w("00")});
    suite.push_back({tno22, proj, full, w("11")});
    return suite;
}

bool criterion_lemma_equivalence(std::string& detail,
                                 std::vector<json>* emitted_certificates) {
    GroupCtx z1 = GroupCtx::zd(1);
    std::vector<LemmaInstance> suite = lemma_suite(z1);
    if (suite.size() != 20) {
        detail = "suite size";
        return false;
    }
    int checked = 0;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const LemmaInstance& inst = suite[i];
        Sft yp = build_yp(inst.y, inst.rule, inst.x, inst.p);
        if (exactness_margin_bound_1d(yp) > 12) {
            detail = "instance " + std::to_string(i) + " exceeds the margin-12 design bound";
            return false;
        }
        std::vector<int> radii = {1};
        if (yp.alphabet().size() == 2) radii.push_back(2);
        for (int n : radii) {
            ExtensionStream stream(Pattern{}, z1.ball(n), yp.alphabet());
            while (auto q = stream.next()) {
                bool member = exact_member_1d(yp, *q);
                NonmembershipResult r = nonmembership_semidecide(yp, *q, 12);
                if ((r.verdict == Verdict::CertifiedYes) == member) {
                    detail = "instance " + std::to_string(i) + " disagrees on a B_" +
                             std::to_string(n) + " pattern";
                    return false;
                }
                if (r.verdict == Verdict::CertifiedYes && emitted_certificates &&
                    emitted_certificates->size() < 30)
                    emitted_certificates->push_back(
                        io::make_nonmembership_certificate(yp, *q, r));
                ++checked;
            }
        }
    }
    detail = std::to_string(checked) + " patterns across 20 instances";
    return true;
}

// --- criterion 6: the membership detector ----------------------------------

bool criterion_detector(std::string& detail, std::vector<json>* emitted_certificates) {
    GroupCtx z1 = GroupCtx::zd(1);
    Alphabet bin = binary();
    Sft full = sft_1d(z1, bin, {});
    LocalRule id = table_rule(z1, bin, bin, {0}, {0, 1});
    LocalRule const0 = table_rule(z1, bin, bin, {0}, {0, 0});
    CertifiedLanguage lk = certified_language_1d(full, 1);

    for (int len = 1; len <= 3; ++len) {
        for (int bits = 0; bits < (1 << len); ++bits) {
            std::string digits;
            for (int i = 0; i < len; ++i)
                digits.push_back(static_cast<char>('0' + ((bits >> i) & 1)));
            Pattern p = pat1d(z1, 0, digits);
            DetectResult r = proper_containment_detect(full, id, full, lk, p, 12);
            if (r.verdict != Verdict::CertifiedYes) {
                detail = "identity family: word " + digits + " not certified";
                return false;
            }
            json cert = io::make_detect_certificate(full, id, full, p, lk, r);
            if (!io::verify_certificate(cert).ok) {
                detail = "identity family: certificate for " + digits + " failed to verify";
                return false;
            }
            if (emitted_certificates) emitted_certificates->push_back(cert);
        }
    }

    for (const char* negative : {"1", "11", "101"}) {
        DetectResult r =
            proper_containment_detect(full, const0, full, lk, pat1d(z1, 0, negative), 12);
        if (r.verdict != Verdict::Unknown) {
            detail = std::string("constant family: ") + negative + " not Unknown";
            return false;
        }
    }
    detail = "14 positives certified, 3 negatives Unknown at budget 12";
    return true;
}

// --- criterion 7: metric properties ----------------------------------------

bool criterion_metric(std::string& detail) {
    GroupCtx z1 = GroupCtx::zd(1);
    Alphabet bin = binary();
    std::vector<Sft> pool = {
        sft_1d(z1, bin, {}),            golden_mean(z1),
        sft_1d(z1, bin, {"00"}),        sft_1d(z1, bin, {"101"}),
        sft_1d(z1, bin, {"00", "11"}),  sft_1d(z1, bin, {"0"}),
        sft_1d(z1, bin, {"11111"}),     sft_1d(z1, bin, {"010", "101"}),
        sft_1d(z1, bin, {"110"}),       sft_1d(z1, bin, {"1001", "11"}),
    };
    const int nmax = 4;
    std::size_t m = pool.size();
    std::vector<std::vector<double>> d(m, std::vector<double>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            d[i][j] = metric_distance(pool[i], pool[j], nmax).value();
    for (std::size_t i = 0; i < m; ++i) {
        if (d[i][i] != 0.0) {
            detail = "D(X,X) != 0";
            return false;
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (d[i][j] != d[j][i]) {
                detail = "not symmetric";
                return false;
            }
            for (std::size_t k = 0; k < m; ++k) {
                if (d[i][k] > std::max(d[i][j], d[j][k])) {
                    detail = "ultrametric inequality failed";
                    return false;
                }
            }
        }
    }
    detail = "1000 ordered triples from a pool of 10";
    return true;
}

// --- criterion 8: greedy extraction ----------------------------------------

bool criterion_greedy(std::string& detail, std::vector<json>* emitted_certificates) {
    GroupCtx z1 = GroupCtx::zd(1);
    Sft golden = golden_mean(z1);
    Pattern previous;
    for (int n = 1; n <= 6; ++n) {
        Pattern prefix = medvedev_zero_witness(golden, n);
        if (prefix.size() != static_cast<std::size_t>(2 * n + 1)) {
            detail = "size mismatch at n=" + std::to_string(n);
            return false;
        }
        for (const auto& [g, sym] : prefix.cells())
            if (sym != 0) {
                detail = "nonzero cell at n=" + std::to_string(n);
                return false;
            }
        for (const Pattern& f : golden.forbidden())
            if (occurs_in(z1, f, prefix)) {
                detail = "forbidden pattern occurs in the prefix";
                return false;
            }
        if (n > 1 && !(restrict_to(prefix, previous.support()) == previous)) {
            detail = "prefix coherence failed at n=" + std::to_string(n);
            return false;
        }
        previous = prefix;
        if (emitted_certificates)
            emitted_certificates->push_back(
                io::make_point_prefix_certificate(golden, n, prefix));
    }
    return true;
}

// --- criterion 9: lift agreement -------------------------------------------

bool criterion_lift(std::string& detail) {
    GroupCtx z1 = GroupCtx::zd(1);
    Sft golden = golden_mean(z1);
    LiftEnumerator lift(golden);
    // Pairs within W_3 merge at fuel 3; stage 4 is above the bound.
    Sft stage = lift.stage_sft(4);
    const GroupCtx& free_ctx = lift.free_ctx();

    std::mt19937 rng(99999);
    std::vector<Word> w3 = z1.words_upto(3);
    int sampled = 0;
    for (int trial = 0; trial < 150; ++trial) {
        std::vector<PatternPresentation::Cell> cells;
        std::set<Word> used;
        int want = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < 3 * want && static_cast<int>(cells.size()) < want; ++i) {
            const Word& w = w3[rng() % w3.size()];
            if (used.insert(w).second) cells.emplace_back(w, static_cast<int>(rng() % 2));
        }
        PatternPresentation p(std::move(cells));

        bool direct_in;
        if (consistency_check(z1, p, 0).verdict == Verdict::CertifiedNo) direct_in = false;
        else direct_in = exact_member_1d(golden, realize(z1, p));

        bool lifted_in;
        if (consistency_check(free_ctx, p, 0).verdict == Verdict::CertifiedNo)
            lifted_in = false;
        else
            lifted_in = locally_admissible(stage, realize(free_ctx, p), 6).verdict ==
                        Verdict::Unknown;

        if (direct_in != lifted_in) {
            detail = "verdict mismatch on a sampled presentation";
            return false;
        }
        ++sampled;
    }
    detail = std::to_string(sampled) + " sampled presentations within W_3";
    return true;
}

// --- criterion 10: certificate integrity ------------------------------------

// Byte span of the "replay" block in a serialized certificate.
std::pair<std::size_t, std::size_t> replay_span(const std::string& text) {
    std::size_t key = text.find("\"replay\"");
    if (key == std::string::npos) return {std::string::npos, 0};
    std::size_t open = text.find('{', key);
    int depth = 0;
    for (std::size_t i = open; i < text.size(); ++i) {
        if (text[i] == '{') ++depth;
        if (text[i] == '}') {
            --depth;
            if (depth == 0) return {key, i + 1};
        }
    }
    return {std::string::npos, 0};
}

bool criterion_certificates(std::string& detail, const std::vector<json>& certificates) {
    if (certificates.size() < 40) {
        detail = "too few emitted certificates (" + std::to_string(certificates.size()) + ")";
        return false;
    }
    for (const json& cert : certificates) {
        if (!io::verify_certificate(cert).ok) {
            detail = "an emitted certificate failed to re-verify";
            return false;
        }
        if (!io::verify_certificate(io::parse_text(cert.dump(2))).ok) {
            detail = "a serialized certificate failed to re-verify";
            return false;
        }
    }

    // One certificate of each kind: every single-byte mutation of the replay
    // block must fail verification.
    std::set<std::string> kinds;
    int mutations = 0;
    for (const json& cert : certificates) {
        std::string kind = cert["kind"].get<std::string>();
        if (!kinds.insert(kind).second) continue;
        std::string text = cert.dump(2);
        auto [lo, hi] = replay_span(text);
        if (lo == std::string::npos) {
            detail = "certificate lacks a replay block";
            return false;
        }
        for (std::size_t i = lo; i < hi; ++i) {
            std::string mutated = text;
            mutated[i] = mutated[i] == 'z' ? 'y' : static_cast<char>(mutated[i] + 1);
            bool failed;
            try {
                failed = !io::verify_certificate(io::parse_text(mutated)).ok;
            } catch (const Error&) {
                failed = true;
            }
            if (!failed) {
                detail = kind + ": mutation at byte " + std::to_string(i) + " still verifies";
                return false;
            }
            ++mutations;
        }
    }
    detail = std::to_string(certificates.size()) + " certificates re-verified, " +
             std::to_string(mutations) + " replay mutations rejected";
    return true;
}

}  // namespace

int main() {
    std::vector<json> emitted;

    auto guard = [](const std::function<bool(std::string&)>& fn, std::string& detail) {
        try {
            return fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
            return false;
        }
    };

    std::string detail;

    detail.clear();
    report(1, "ball counts (Z^2 and F_2)", guard(criterion_ball_counts, detail), detail);

    detail.clear();
    report(2, "golden-mean exact language and margin convergence",
           guard(criterion_golden_language, detail), detail);

    detail.clear();
    report(3, "pattern map against direct evaluation", guard(criterion_phi, detail), detail);

    detail.clear();
    report(4, "pullback against brute-force rule images", guard(criterion_pullback, detail),
           detail);

    detail.clear();
    report(5, "non-membership matches the exact automaton within margin 12",
           guard([&](std::string& d) { return criterion_lemma_equivalence(d, &emitted); },
                 detail),
           detail);

    detail.clear();
    report(6, "membership detector on positive and negative families",
           guard([&](std::string& d) { return criterion_detector(d, &emitted); }, detail),
           detail);

    detail.clear();
    report(7, "metric symmetry and ultrametric inequality", guard(criterion_metric, detail),
           detail);

    detail.clear();
    report(8, "greedy point extraction on the golden mean",
           guard([&](std::string& d) { return criterion_greedy(d, &emitted); }, detail),
           detail);

    detail.clear();
    report(9, "free-group lift agreement on sampled word patterns",
           guard(criterion_lift, detail), detail);

    detail.clear();
    report(10, "certificate re-verification and tamper rejection",
           guard([&](std::string& d) { return criterion_certificates(d, emitted); }, detail),
           detail);

    if (failures == 0) {
        std::printf("all 10 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}
