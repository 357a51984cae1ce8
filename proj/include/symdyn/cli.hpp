// cli.hpp -- command-line front end: loads group/SFT/rule/pattern documents,
// runs the engine operations, and emits reports and replayable certificates.
//
// Exit codes: 0 = CertifiedYes / success, 1 = CertifiedNo, 2 = Unknown or
// budget exhausted, 3 = error (bad documents, mismatched contexts, usage).
#pragma once

#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "symdyn/decision.hpp"
#include "symdyn/io.hpp"

namespace symdyn::cli {

using nlohmann::json;

inline int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::CertifiedYes: return 0;
        case Verdict::CertifiedNo: return 1;
        default: return 2;
    }
}

// Named objects of one invocation. Everything loaded must share one group
// context.
struct Workspace {
    std::optional<GroupCtx> group;
    std::set<std::string> names;

    void adopt(const GroupCtx& ctx, const std::string& name) {
        if (!names.insert(name).second) throw Error("object name collision: '" + name + "'");
        if (!group) group.emplace(ctx);
        else if (!(*group == ctx))
            throw Error("group context mismatch: '" + name +
                        "' disagrees with previously loaded objects");
    }

    const GroupCtx& ctx() const {
        if (!group) throw Error("no group context loaded");
        return *group;
    }
};

// Plain-text grid for a Z^2 pattern: x grows east, y grows north, '.' marks
// unassigned cells of the bounding box.
inline std::string render_grid(const GroupCtx& z2, const Pattern& q, const Alphabet& alphabet) {
    if (z2.kind() != GroupKind::Zd || z2.dimension() != 2)
        throw Error("render: requires a Z^2 context");
    if (q.empty()) return "(empty pattern)\n";
    long xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    bool first = true;
    std::map<std::pair<long, long>, Symbol> cells;
    for (const auto& [g, sym] : q.cells()) {
        auto c = z2.zd_coords(g);
        if (first || c[0] < xlo) xlo = c[0];
        if (first || c[0] > xhi) xhi = c[0];
        if (first || c[1] < ylo) ylo = c[1];
        if (first || c[1] > yhi) yhi = c[1];
        first = false;
        cells[{c[0], c[1]}] = sym;
    }
    std::size_t width = 1;
    for (const auto& name : alphabet.names()) width = std::max(width, name.size());
    std::string outtext;
    for (long y = yhi; y >= ylo; --y) {
        for (long x = xlo; x <= xhi; ++x) {
            auto it = cells.find({x, y});
            std::string c = it == cells.end() ? "." : alphabet.name(it->second);
            c.resize(width, ' ');
            if (x > xlo) outtext += ' ';
            outtext += c;
        }
        outtext += '\n';
    }
    return outtext;
}

namespace detail {

struct Options {
    std::string group_file, sft_file, pattern_file, rule_file, a_file, b_file;
    std::string y_file, x_file, lk_file, cert_file, save_file, out_file;
    std::string format = "text";
    std::string cert_in;
    int n = 2;
    int margin = 0;
    int fuel = 2;
    int k = 1;
    int budget = 8;
    int nmax = 4;
    bool exact = false;
    bool unsound_override = false;
};

inline int emit(std::ostream& out, const Options& opt, json report, int code,
                const std::string& text) {
    report["exit_code"] = code;
    if (opt.format == "json") out << report.dump(2) << '\n';
    else out << text;
    if (!opt.out_file.empty()) io::save_file(opt.out_file, report);
    return code;
}

inline Pattern load_pattern(const std::string& path, const GroupCtx& ctx,
                            const Alphabet& alphabet) {
    return io::pattern_from_json(io::load_file(path), ctx, alphabet);
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using detail::Options;
    Options opt;
    CLI::App app{"computational symbolic dynamics over finitely generated groups"};
    app.require_subcommand(1);

    auto* info = app.add_subcommand("group-info", "inspect a group document");
    info->add_option("--group", opt.group_file, "group document")->required();
    info->add_option("--n", opt.n, "largest radius to report");
    info->add_option("--fuel", opt.fuel, "fuel for semi-decidable word problems");

    auto* consistency = app.add_subcommand("check-consistency", "check a pattern presentation");
    consistency->add_option("--group", opt.group_file)->required();
    consistency->add_option("--pattern", opt.pattern_file)->required();
    consistency->add_option("--fuel", opt.fuel);

    auto* language = app.add_subcommand("language", "language of an SFT on a ball");
    language->add_option("--sft", opt.sft_file)->required();
    language->add_option("--n", opt.n);
    language->add_option("--margin", opt.margin);
    language->add_flag("--exact", opt.exact, "use the exact 1d automaton (Z only)");

    auto* admissible = app.add_subcommand("admissible", "local admissibility of a pattern");
    admissible->add_option("--sft", opt.sft_file)->required();
    admissible->add_option("--pattern", opt.pattern_file)->required();
    admissible->add_option("--margin", opt.margin);
    admissible->add_option("--cert", opt.cert_file, "write a non-membership certificate");

    auto* dist = app.add_subcommand("dist", "metric D between two SFTs");
    dist->add_option("--a", opt.a_file)->required();
    dist->add_option("--b", opt.b_file)->required();
    dist->add_option("--n", opt.nmax, "largest radius compared");
    dist->add_option("--margin", opt.margin, "margin for non-Z evidence mode");

    auto* apply = app.add_subcommand("apply-rule", "apply a local rule to a pattern");
    apply->add_option("--group", opt.group_file)->required();
    apply->add_option("--rule", opt.rule_file)->required();
    apply->add_option("--pattern", opt.pattern_file)->required();

    auto* pullback = app.add_subcommand("pullback", "preimage SFT under a local rule");
    pullback->add_option("--rule", opt.rule_file)->required();
    pullback->add_option("--sft", opt.sft_file)->required();
    pullback->add_option("--save", opt.save_file, "write the resulting SFT document");

    auto* forbid = app.add_subcommand("forbid", "additionally forbid a pattern");
    forbid->add_option("--sft", opt.sft_file)->required();
    forbid->add_option("--pattern", opt.pattern_file)->required();
    forbid->add_option("--save", opt.save_file, "write the resulting SFT document");

    auto* buildyp = app.add_subcommand("build-yp", "Y_p = Y intersect phi^-1(X_p)");
    buildyp->add_option("--y", opt.y_file)->required();
    buildyp->add_option("--rule", opt.rule_file)->required();
    buildyp->add_option("--x", opt.x_file)->required();
    buildyp->add_option("--pattern", opt.pattern_file)->required();
    buildyp->add_option("--save", opt.save_file, "write the resulting SFT document");

    auto* lift = app.add_subcommand("lift-free", "forbidden presentations of the free-group lift");
    lift->add_option("--sft", opt.sft_file)->required();
    lift->add_option("--fuel", opt.fuel);
    lift->add_option("--save", opt.save_file, "write the stage SFT over F(S)");

    auto* detect = app.add_subcommand("detect-membership",
                                      "semi-decide p in L(X) via the Y_p detector");
    detect->add_option("--y", opt.y_file)->required();
    detect->add_option("--rule", opt.rule_file)->required();
    detect->add_option("--x", opt.x_file)->required();
    detect->add_option("--pattern", opt.pattern_file)->required();
    detect->add_option("--k", opt.k, "radius of the hard-coded language of Y");
    detect->add_option("--budget", opt.budget, "margin budget per instance");
    detect->add_option("--lk", opt.lk_file, "language list document (else exact 1d)");
    detect->add_flag("--unsound-override", opt.unsound_override,
                     "accept an uncertified language list");
    detect->add_option("--cert", opt.cert_file, "write a containment certificate");

    auto* extract = app.add_subcommand("extract-point", "greedy computable-point prefix");
    extract->add_option("--sft", opt.sft_file)->required();
    extract->add_option("--n", opt.n);
    extract->add_option("--cert", opt.cert_file, "write a point-prefix certificate");

    auto* verify = app.add_subcommand("verify-cert", "re-verify a certificate file");
    verify->add_option("cert", opt.cert_in, "certificate file")->required();

    auto* render = app.add_subcommand("render", "plain-text grid of a Z^2 pattern");
    render->add_option("--sft", opt.sft_file)->required();
    render->add_option("--pattern", opt.pattern_file)->required();

    for (auto* sub : {info, consistency, language, admissible, dist, apply, pullback, forbid,
                      buildyp, lift, detect, extract, verify, render}) {
        sub->add_option("--format", opt.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", opt.out_file, "write the JSON report to a file");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 3;
    }

    try {
        Workspace ws;

        if (app.got_subcommand(info)) {
            GroupCtx ctx = io::group_from_json(io::load_file(opt.group_file));
            ws.adopt(ctx, "group");
            json levels = json::array();
            std::string text;
            switch (ctx.kind()) {
                case GroupKind::Zd: text = "kind: Z^" + std::to_string(ctx.dimension()); break;
                case GroupKind::Free:
                    text = "kind: free group of rank " + std::to_string(ctx.dimension());
                    break;
                case GroupKind::Presented: text = "kind: presented group"; break;
            }
            text += "\ngenerators:";
            for (const auto& g : ctx.generating_set()) text += std::string(" ") + g.name;
            text += "\n";
            for (int n = 0; n <= opt.n; ++n) {
                json level{{"n", n}, {"words", ctx.words_upto(n).size()}};
                text += "n=" + std::to_string(n) +
                        ": |W_n|=" + std::to_string(ctx.words_upto(n).size());
                if (ctx.decidable()) {
                    level["ball"] = ctx.ball(n).size();
                    text += " |B_n|=" + std::to_string(ctx.ball(n).size());
                } else {
                    level["classes"] = ctx.ball_approx(n, opt.fuel).size();
                    level["fuel"] = opt.fuel;
                    text += " classes(fuel=" + std::to_string(opt.fuel) +
                            ")=" + std::to_string(ctx.ball_approx(n, opt.fuel).size());
                }
                text += "\n";
                levels.push_back(level);
            }
            json report{{"verb", "group-info"}, {"group", io::group_to_json(ctx)},
                        {"levels", levels}};
            return detail::emit(out, opt, report, 0, text);
        }

        if (app.got_subcommand(consistency)) {
            GroupCtx ctx = io::group_from_json(io::load_file(opt.group_file));
            ws.adopt(ctx, "group");
            json pdoc = io::load_file(opt.pattern_file);
            // Alphabet: distinct value names in order of first appearance.
            std::vector<std::string> names;
            for (const auto& v : io::expect(pdoc, "values", "pattern document")) {
                std::string name = v.get<std::string>();
                if (std::find(names.begin(), names.end(), name) == names.end())
                    names.push_back(name);
            }
            Alphabet alphabet{names};
            PatternPresentation p = io::presentation_from_json(pdoc, ctx, alphabet);
            ConsistencyResult r = consistency_check(ctx, p, opt.fuel);
            json report{{"verb", "check-consistency"}, {"verdict", to_string(r.verdict)}};
            std::string text = std::string("consistency: ") + to_string(r.verdict) + "\n";
            if (r.violation) {
                report["violation"] = {r.violation->first.letters(),
                                       r.violation->second.letters()};
                text += "violating words: '" + r.violation->first.letters() + "' vs '" +
                        r.violation->second.letters() + "'\n";
            }
            return detail::emit(out, opt, report, verdict_exit(r.verdict), text);
        }

        if (app.got_subcommand(language)) {
            Sft x = io::sft_from_json(io::load_file(opt.sft_file), opt.fuel);
            ws.adopt(x.ctx(), "sft");
            LangApprox lang = opt.exact ? language_exact_1d(x, opt.n)
                                        : language_upper(x, opt.n, opt.margin);
            json patterns = json::array();
            for (const Pattern& p : lang.patterns)
                patterns.push_back(io::pattern_to_json(p, x.alphabet()));
            json report{{"verb", "language"}, {"n", lang.n},      {"margin", lang.margin},
                        {"exact", lang.exact}, {"count", lang.patterns.size()},
                        {"patterns", patterns}};
            std::string text = (lang.exact ? std::string("exact language")
                                           : "upper approximation (margin " +
                                                 std::to_string(lang.margin) + ")") +
                               " on B_" + std::to_string(lang.n) + ": " +
                               std::to_string(lang.patterns.size()) + " patterns\n";
            for (const Pattern& p : lang.patterns)
                text += io::pattern_to_json(p, x.alphabet()).dump() + "\n";
            return detail::emit(out, opt, report, 0, text);
        }

        if (app.got_subcommand(admissible)) {
            Sft x = io::sft_from_json(io::load_file(opt.sft_file));
            ws.adopt(x.ctx(), "sft");
            Pattern q = detail::load_pattern(opt.pattern_file, x.ctx(), x.alphabet());
            AdmissResult r = locally_admissible(x, q, opt.margin);
            json report{{"verb", "admissible"},
                        {"verdict", to_string(r.verdict)},
                        {"margin", r.margin},
                        {"domain_radius", r.domain_radius}};
            std::string text = std::string("locally admissible: ") + to_string(r.verdict) +
                               " (margin " + std::to_string(r.margin) + ")\n";
            if (r.witness) {
                report["witness"] = io::pattern_to_json(*r.witness, x.alphabet());
                text += "witness extension: " +
                        io::pattern_to_json(*r.witness, x.alphabet()).dump() + "\n";
            }
            if (r.verdict == Verdict::CertifiedNo && !opt.cert_file.empty()) {
                NonmembershipResult nm;
                nm.verdict = Verdict::CertifiedYes;
                nm.max_margin = opt.margin;
                nm.certified_margin = opt.margin;
                nm.refutation = r.refutation;
                io::save_file(opt.cert_file, io::make_nonmembership_certificate(x, q, nm));
                text += "certificate written to " + opt.cert_file + "\n";
            }
            return detail::emit(out, opt, report, verdict_exit(r.verdict), text);
        }

        if (app.got_subcommand(dist)) {
            Sft a = io::sft_from_json(io::load_file(opt.a_file));
            Sft b = io::sft_from_json(io::load_file(opt.b_file));
            ws.adopt(a.ctx(), "a");
            ws.adopt(b.ctx(), "b");
            bool is_z = a.ctx().kind() == GroupKind::Zd && a.ctx().dimension() == 1;
            MetricResult r = is_z ? metric_distance(a, b, opt.nmax)
                                  : metric_evidence(a, b, opt.nmax, opt.margin);
            json report{{"verb", "dist"},
                        {"value", r.value_string()},
                        {"certified", r.certified},
                        {"agree_radius", r.agree_radius},
                        {"nmax", r.nmax},
                        {"equal_up_to_nmax", r.agree_through_nmax}};
            std::string text = r.value_string() + "\n";
            if (r.agree_through_nmax)
                text += "languages agree through nmax=" + std::to_string(r.nmax) +
                        " (not a proof of equality)\n";
            if (!r.certified)
                text += "warning: non-Z context, value compares margin-bounded upper "
                        "approximations only\n";
            return detail::emit(out, opt, report, 0, text);
        }

        if (app.got_subcommand(apply)) {
            GroupCtx ctx = io::group_from_json(io::load_file(opt.group_file));
            ws.adopt(ctx, "group");
            LocalRule rule = io::rule_from_json(io::load_file(opt.rule_file), ctx);
            Pattern q = detail::load_pattern(opt.pattern_file, ctx, rule.domain_alphabet());
            Pattern image = phi_pattern(rule, q);
            json report{{"verb", "apply-rule"},
                        {"image", io::pattern_to_json(image, rule.codomain_alphabet())}};
            return detail::emit(out, opt, report, 0,
                                io::pattern_to_json(image, rule.codomain_alphabet()).dump(2) +
                                    "\n");
        }

        if (app.got_subcommand(pullback)) {
            Sft x = io::sft_from_json(io::load_file(opt.sft_file));
            ws.adopt(x.ctx(), "sft");
            LocalRule rule = io::rule_from_json(io::load_file(opt.rule_file), x.ctx());
            Sft pulled = pullback_sft(rule, x);
            json doc = io::sft_to_json(pulled);
            if (!opt.save_file.empty()) io::save_file(opt.save_file, doc);
            json report{{"verb", "pullback"},
                        {"forbidden_count", pulled.forbidden().size()},
                        {"result", doc}};
            return detail::emit(out, opt, report, 0,
                                "pullback SFT with " +
                                    std::to_string(pulled.forbidden().size()) +
                                    " forbidden patterns\n");
        }

        if (app.got_subcommand(forbid)) {
            Sft x = io::sft_from_json(io::load_file(opt.sft_file));
            ws.adopt(x.ctx(), "sft");
            Pattern p = detail::load_pattern(opt.pattern_file, x.ctx(), x.alphabet());
            Sft xp = forbid_additionally(x, p);
            json doc = io::sft_to_json(xp);
            if (!opt.save_file.empty()) io::save_file(opt.save_file, doc);
            json report{{"verb", "forbid"},
                        {"forbidden_count", xp.forbidden().size()},
                        {"result", doc}};
            return detail::emit(out, opt, report, 0,
                                "X_p with " + std::to_string(xp.forbidden().size()) +
                                    " forbidden patterns\n");
        }

        if (app.got_subcommand(buildyp)) {
            Sft y = io::sft_from_json(io::load_file(opt.y_file));
            Sft x = io::sft_from_json(io::load_file(opt.x_file));
            ws.adopt(y.ctx(), "y");
            ws.adopt(x.ctx(), "x");
            LocalRule rule = io::rule_from_json(io::load_file(opt.rule_file), y.ctx());
            Pattern p = detail::load_pattern(opt.pattern_file, x.ctx(), x.alphabet());
            Sft yp = build_yp(y, rule, x, p);
            json doc = io::sft_to_json(yp);
            if (!opt.save_file.empty()) io::save_file(opt.save_file, doc);
            json report{{"verb", "build-yp"},
                        {"forbidden_count", yp.forbidden().size()},
                        {"result", doc}};
            return detail::emit(out, opt, report, 0,
                                "Y_p with " + std::to_string(yp.forbidden().size()) +
                                    " forbidden patterns\n");
        }

        if (app.got_subcommand(lift)) {
            Sft z = io::sft_from_json(io::load_file(opt.sft_file));
            ws.adopt(z.ctx(), "sft");
            LiftEnumerator enumerator(z);
            LiftStage stage = enumerator.stage(opt.fuel);
            json forbidden = json::array();
            for (const auto& p : stage.forbidden)
                forbidden.push_back(io::presentation_to_json(p, z.alphabet()));
            if (!opt.save_file.empty())
                io::save_file(opt.save_file, io::sft_to_json(enumerator.stage_sft(opt.fuel)));
            json report{{"verb", "lift-free"},
                        {"fuel", stage.fuel},
                        {"free_group", io::group_to_json(enumerator.free_ctx())},
                        {"forbidden", forbidden}};
            return detail::emit(out, opt, report, 0,
                                "stage " + std::to_string(stage.fuel) + ": " +
                                    std::to_string(stage.forbidden.size()) +
                                    " forbidden presentations over F(S)\n");
        }

        if (app.got_subcommand(detect)) {
            Sft y = io::sft_from_json(io::load_file(opt.y_file));
            Sft x = io::sft_from_json(io::load_file(opt.x_file));
            ws.adopt(y.ctx(), "y");
            ws.adopt(x.ctx(), "x");
            LocalRule rule = io::rule_from_json(io::load_file(opt.rule_file), y.ctx());
            Pattern p = detail::load_pattern(opt.pattern_file, x.ctx(), x.alphabet());
            CertifiedLanguage lk;
            if (!opt.lk_file.empty()) {
                lk = io::lk_from_json(io::load_file(opt.lk_file), y.ctx(), y.alphabet());
                if (lk.k != opt.k && detect->count("--k") > 0)
                    throw Error("detect: --k disagrees with the language document");
            } else {
                if (y.ctx().kind() != GroupKind::Zd || y.ctx().dimension() != 1)
                    throw Error(
                        "detect: exact languages need a Z context; supply --lk for other "
                        "groups");
                lk = certified_language_1d(y, opt.k);
            }
            DetectResult r =
                proper_containment_detect(y, rule, x, lk, p, opt.budget, opt.unsound_override);
            json report{{"verb", "detect-membership"},
                        {"verdict", to_string(r.verdict)},
                        {"budget", r.budget},
                        {"unsound_source", r.unsound_source}};
            std::string text = std::string("p in L(X): ") + to_string(r.verdict) + "\n";
            if (r.unsound_source)
                text += "warning: language list uncertified (unsound override)\n";
            if (r.verdict == Verdict::CertifiedYes) {
                report["witness_index"] = r.witness_index;
                report["margin"] = r.margin;
                text += "witness " + std::to_string(r.witness_index) + " dies at margin " +
                        std::to_string(r.margin) + "\n";
                if (!opt.cert_file.empty()) {
                    io::save_file(opt.cert_file,
                                  io::make_detect_certificate(y, rule, x, p, lk, r));
                    text += "certificate written to " + opt.cert_file + "\n";
                }
            }
            return detail::emit(out, opt, report, verdict_exit(r.verdict), text);
        }

        if (app.got_subcommand(extract)) {
            Sft x = io::sft_from_json(io::load_file(opt.sft_file));
            ws.adopt(x.ctx(), "sft");
            Pattern prefix = medvedev_zero_witness(x, opt.n);
            json report{{"verb", "extract-point"},
                        {"n", opt.n},
                        {"pattern", io::pattern_to_json(prefix, x.alphabet())}};
            std::string text = io::pattern_to_json(prefix, x.alphabet()).dump(2) + "\n";
            if (!opt.cert_file.empty()) {
                io::save_file(opt.cert_file,
                              io::make_point_prefix_certificate(x, opt.n, prefix));
                text += "certificate written to " + opt.cert_file + "\n";
            }
            return detail::emit(out, opt, report, 0, text);
        }

        if (app.got_subcommand(verify)) {
            io::VerifyOutcome outcome = io::verify_certificate(io::load_file(opt.cert_in));
            json report{{"verb", "verify-cert"},
                        {"ok", outcome.ok},
                        {"kind", outcome.kind},
                        {"detail", outcome.detail}};
            std::string text = (outcome.ok ? "certificate verified: " : "verification FAILED: ") +
                               outcome.detail + "\n";
            return detail::emit(out, opt, report, outcome.ok ? 0 : 3, text);
        }

        if (app.got_subcommand(render)) {
            Sft x = io::sft_from_json(io::load_file(opt.sft_file));
            ws.adopt(x.ctx(), "sft");
            Pattern q = detail::load_pattern(opt.pattern_file, x.ctx(), x.alphabet());
            std::string grid = render_grid(x.ctx(), q, x.alphabet());
            json report{{"verb", "render"}, {"grid", grid}};
            return detail::emit(out, opt, report, 0, grid);
        }

        err << "error: no subcommand\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace symdyn::cli
