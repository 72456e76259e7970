// Command-line front end: load shift specs, run enumeration / entropy /
// exchangeability / claim verification, export graphs and figure renders.
//
// Exit codes: 0 success or claim verified, 1 input fault, 2 counterexample
// or failed validation, 3 budget exhausted.

#include <CLI11.hpp>
#include <iostream>

#include "sft/claims.hpp"
#include "sft/entropy.hpp"
#include "sft/json_out.hpp"
#include "sft/render.hpp"
#include "sft/spec_io.hpp"

using namespace sft;

static const char* kVersion = "sft 1.0.0";

namespace {

struct Common {
    std::string shift_name;
    std::string spec_path;
    uint64_t seed = 1;
    uint64_t max_nodes = 20'000'000;
    uint64_t max_millis = 120'000;
    std::string out_path;
    bool trace = false;

    void print_trace(const SearchStats& st) const {
        if (!trace) return;
        std::cout << "trace: nodes=" << st.nodes << " propagations=" << st.propagations
                  << " solutions=" << st.solutions << " exhausted=" << (st.exhausted ? 1 : 0)
                  << "\n";
    }

    SearchBudget budget() const { return SearchBudget{max_nodes, max_millis, seed}; }

    Shift load() const {
        if (!spec_path.empty()) {
            ShiftSpec spec = load_spec_text(read_file(spec_path));
            if (spec.validator == "at-most-one-1") return zoo::sunny_side_up();
            if (!spec.validator.empty())
                throw spec_error("unknown validator: " + spec.validator);
            return Shift::sft(std::move(spec));
        }
        if (!shift_name.empty()) return zoo::by_name(shift_name);
        throw spec_error("need --shift or --spec");
    }
    uint64_t spec_hash(const Shift& sh) const {
        if (!spec_path.empty()) return fnv1a(read_file(spec_path));
        return fnv1a(save_spec_text(sh.kind == Shift::Sofic ? sh.cover : sh.spec));
    }
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--shift", c.shift_name, "built-in shift name");
    app->add_option("--spec", c.spec_path, "shift spec file");
    app->add_option("--seed", c.seed, "random seed (drives all sampling)");
    app->add_option("--max-nodes", c.max_nodes, "search node budget");
    app->add_option("--max-millis", c.max_millis, "search time budget (ms)");
    app->add_option("--out", c.out_path, "output artifact path");
    app->add_flag("--trace", c.trace, "print solver trace lines (nodes, propagations)");
    if (const char* env = std::getenv("SFT_MAX_MILLIS")) c.max_millis = std::strtoull(env, nullptr, 10);
}

void emit(const Common& c, const Shift& sh, const std::string& verb, const Json& params,
          const Json& body) {
    Json artifact;
    artifact["run"] = run_header(kVersion, sh.name(), c.spec_hash(sh), c.seed, params);
    artifact["verb"] = verb;
    artifact["result"] = body;
    std::string text = artifact.dump(2) + "\n";
    std::cout << "# " << kVersion << " shift=" << sh.name() << " hash=" << c.spec_hash(sh)
              << " seed=" << c.seed << " verb=" << verb << "\n";
    if (!c.out_path.empty())
        write_file(c.out_path, text);
    else
        std::cout << text;
}

int claim_exit(const ClaimReport& rep) {
    switch (rep.verdict) {
        case ClaimReport::Verified: return 0;
        case ClaimReport::Counterexample: return 2;
        default: return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"subshift-of-finite-type toolkit"};
    app.require_subcommand(1);

    Common c;

    // validate
    auto* v = app.add_subcommand("validate", "validate a pattern or torus against a spec");
    std::string pattern_path, torus_path;
    add_common(v, c);
    v->add_option("--pattern", pattern_path, "pattern file");
    v->add_option("--torus", torus_path, "torus file");

    // enumerate / count
    auto* en = app.add_subcommand("enumerate", "enumerate the m-extendable language on box(d,n)");
    auto* cnt = app.add_subcommand("count", "count the m-extendable language on box(d,n)");
    int box_n = 1, margin = 0;
    uint64_t cap = 10000;
    for (auto* sc : {en, cnt}) {
        add_common(sc, c);
        sc->add_option("--box", box_n, "box radius n");
        sc->add_option("--margin", margin, "extendability margin m");
    }
    en->add_option("--cap", cap, "max patterns to emit");

    // entropy
    auto* ent = app.add_subcommand("entropy", "box-count or strip-transfer entropy bounds");
    int strip_w = 0;
    add_common(ent, c);
    ent->add_option("--box", box_n, "box radius for box-count");
    ent->add_option("--margin", margin, "margin for box-count");
    ent->add_option("--strip", strip_w, "strip width (enables transfer-matrix method)");

    // exchange
    auto* ex = app.add_subcommand("exchange", "classify a pattern pair");
    std::string p_path, q_path;
    int agree_r = 2;
    int ex_margin = 1;
    bool open_mode = false;
    add_common(ex, c);
    ex->add_option("--p", p_path, "first pattern file")->required();
    ex->add_option("--q", q_path, "second pattern file")->required();
    ex->add_option("--radius", agree_r, "agreement radius r");
    ex->add_option("--margin", ex_margin, "language margin m");
    ex->add_flag("--open", open_mode, "open-window witnesses (non-certifying)");

    // graph
    auto* gr = app.add_subcommand("graph", "exchangeability graph on box(d,n)");
    uint64_t vertex_cap = 2048, pair_cap = 1u << 18;
    std::string dot_path;
    add_common(gr, c);
    gr->add_option("--box", box_n, "box radius n");
    gr->add_option("--radius", agree_r, "agreement radius r");
    gr->add_option("--margin", ex_margin, "language margin m");
    gr->add_option("--vertex-cap", vertex_cap, "max vertices");
    gr->add_option("--pair-cap", pair_cap, "max classified pairs");
    gr->add_option("--dot", dot_path, "also write DOT topology");

    // bce
    auto* bce = app.add_subcommand("bce", "BCE profile over growing supports");
    int bce_max_n = 2;
    add_common(bce, c);
    bce->add_option("--max-box", bce_max_n, "profile supports box(d,0..n)");
    bce->add_option("--radius", agree_r, "agreement radius r");
    bce->add_option("--margin", ex_margin, "language margin m");

    // claim
    auto* cl = app.add_subcommand("claim", "verify a finite-scale claim");
    std::string claim_name;
    std::string torus_sizes = "3,3,5";
    int claim_n = 1;
    uint64_t samples = 100;
    int chain_from = 0, chain_to = 3, chain_window = 4;
    add_common(cl, c);
    cl->add_option("name", claim_name,
                   "good-wave | blue-sky | periodic-density | pasting | weak-mixing | worm-chain")
        ->required();
    cl->add_option("--torus", torus_sizes, "torus periods (good-wave)");
    cl->add_option("--n", claim_n, "pattern box radius");
    cl->add_option("--samples", samples, "sample count");
    cl->add_option("--from", chain_from, "worm-chain start column");
    cl->add_option("--to", chain_to, "worm-chain end column");
    cl->add_option("--window", chain_window, "worm-chain window radius");

    // render
    auto* rd = app.add_subcommand("render", "render a pattern or torus to SVG");
    bool crest_flag = false;
    add_common(rd, c);
    rd->add_option("--pattern", pattern_path, "pattern file");
    rd->add_option("--torus", torus_path, "torus file");
    rd->add_flag("--crest", crest_flag, "highlight wave crests (good-wave tori)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (v->parsed()) {
            Shift sh = c.load();
            bool ok = false;
            if (!pattern_path.empty()) {
                Pattern p = load_pattern_text(read_file(pattern_path), sh.spec);
                ok = shift_validate(sh, p);
            } else if (!torus_path.empty()) {
                TorusConfig t = load_torus_text(read_file(torus_path), sh.spec);
                ok = shift_validate_torus(sh, t);
            } else {
                throw spec_error("validate: need --pattern or --torus");
            }
            Json body;
            body["valid"] = ok;
            emit(c, sh, "validate", Json::object(), body);
            return ok ? 0 : 2;
        }
        if (en->parsed() || cnt->parsed()) {
            Shift sh = c.load();
            Support F = box(sh.dim(), box_n);
            Json params;
            params["box"] = box_n;
            params["margin"] = margin;
            if (en->parsed()) {
                auto r = shift_enumerate(sh, F, margin, c.budget(), cap);
                c.print_trace(r.stats);
                Json body;
                body["count"] = r.patterns.size();
                body["capped"] = r.capped;
                body["exhausted"] = r.exhausted;
                Json pats = Json::array();
                for (const auto& p : r.patterns) pats.push_back(to_json(sh.spec, p));
                body["patterns"] = pats;
                emit(c, sh, "enumerate", params, body);
                return r.exhausted || r.capped ? 0 : 3;
            }
            auto r = shift_count(sh, F, margin, c.budget());
            c.print_trace(r.stats);
            Json body;
            body["count"] = r.count.str();
            body["exact"] = r.exact;
            emit(c, sh, "count", params, body);
            return r.exact ? 0 : 3;
        }
        if (ent->parsed()) {
            Shift sh = c.load();
            Json params;
            Json body;
            if (strip_w > 0) {
                ShiftSpec spec = sh.spec;
                if (sh.kind != Shift::SFT) throw spec_error("strip entropy needs an SFT");
                if (spec.dim == 1) spec = zoo::as_z2_rows(spec);
                params["strip"] = strip_w;
                Json table = Json::array();
                for (int w = 1; w <= strip_w; ++w) {
                    auto e = strip_transfer_entropy(spec, w, 200000, 1u << 14, c.seed);
                    Json row = to_json(e);
                    table.push_back(row);
                    if (w == strip_w) body = row;
                    std::cout << "w=" << w << " upper=" << e.upper << " lower=" << e.lower
                              << "\n";
                }
                body["table"] = table;
            } else {
                params["box"] = box_n;
                params["margin"] = margin;
                auto e = entropy_upper_box(sh, box_n, margin, c.budget());
                std::cout << "n=" << box_n << " upper=" << e.upper << "\n";
                body = to_json(e);
            }
            emit(c, sh, "entropy", params, body);
            return 0;
        }
        if (ex->parsed()) {
            Shift sh = c.load();
            Pattern p = load_pattern_text(read_file(p_path), sh.spec);
            Pattern q = load_pattern_text(read_file(q_path), sh.spec);
            ExchangeabilityParams params;
            params.agreement_radius = agree_r;
            params.margin = ex_margin;
            params.mode =
                open_mode ? ExchangeabilityParams::OpenMode : ExchangeabilityParams::TorusMode;
            params.budget = c.budget();
            auto r = exchangeable(sh, p, q, params);
            c.print_trace(r.stats);
            Json jp;
            jp["radius"] = agree_r;
            jp["margin"] = ex_margin;
            Json body;
            body["verdict"] = r.verdict == Classification::Exchangeable ? "witness"
                              : r.verdict == Classification::Obstructed ? "obstructed"
                                                                        : "no-witness-up-to";
            if (r.witness) body["witness"] = to_json(sh.spec, *r.witness);
            if (r.obstruction) body["obstruction"] = to_json(*r.obstruction);
            body["exhausted"] = r.exhausted;
            emit(c, sh, "exchange", jp, body);
            if (r.verdict == Classification::Exchangeable ||
                r.verdict == Classification::Obstructed)
                return 0;
            return r.exhausted ? 2 : 3;
        }
        if (gr->parsed()) {
            Shift sh = c.load();
            ExchangeabilityParams params;
            params.agreement_radius = agree_r;
            params.margin = ex_margin;
            params.budget = c.budget();
            auto g = exchangeability_graph(sh, box(sh.dim(), box_n), params, vertex_cap, pair_cap);
            Json jp;
            jp["box"] = box_n;
            jp["radius"] = agree_r;
            jp["margin"] = ex_margin;
            emit(c, sh, "graph", jp, to_json(sh.spec, g));
            if (!dot_path.empty()) write_file(dot_path, to_dot(g));
            return 0;
        }
        if (bce->parsed()) {
            Shift sh = c.load();
            ExchangeabilityParams params;
            params.agreement_radius = std::max(agree_r, bce_max_n);
            params.margin = ex_margin;
            params.budget = c.budget();
            std::vector<Support> sups;
            for (int n = 0; n <= bce_max_n; ++n) sups.push_back(box(sh.dim(), n));
            auto prof = bce_profile(sh, sups, params);
            Json jp;
            jp["max_box"] = bce_max_n;
            emit(c, sh, "bce", jp, to_json(prof));
            return 0;
        }
        if (cl->parsed()) {
            Json jp;
            jp["claim"] = claim_name;
            if (claim_name == "good-wave") {
                ShiftSpec gw = zoo::good_wave();
                Coord periods;
                {
                    std::stringstream ss(torus_sizes);
                    std::string part;
                    int i = 0;
                    while (std::getline(ss, part, ',') && i < 3) periods[i++] = std::stoi(part);
                }
                auto rep = verify_good_wave(gw, periods, c.budget());
                emit(c, zoo::by_name("good-wave"), "claim", jp, to_json(rep));
                return claim_exit(rep);
            }
            if (claim_name == "blue-sky") {
                auto rep = verify_blue_sky(claim_n, c.budget(), samples, c.seed);
                emit(c, zoo::by_name("x-struct"), "claim", jp, to_json(rep));
                return claim_exit(rep);
            }
            if (claim_name == "periodic-density") {
                Shift sh = c.load();
                auto rep = verify_periodic_density(sh, claim_n, c.budget(), samples, c.seed);
                emit(c, sh, "claim", jp, to_json(rep));
                return claim_exit(rep);
            }
            if (claim_name == "pasting") {
                ShiftSpec gw = zoo::good_wave();
                Shift sh = zoo::by_name("good-wave");
                uint64_t ok = 0, bad = 0, cut = 0;
                Json reports = Json::array();
                for (uint64_t i = 0; i < samples; ++i) {
                    auto p1 = sample_admissible_pattern(gw, box(3, 1), c.seed * 31 + 2 * i,
                                                        c.budget());
                    auto p2 = sample_admissible_pattern(gw, box(3, 1), c.seed * 31 + 2 * i + 1,
                                                        c.budget());
                    if (!p1 || !p2) {
                        ++cut;
                        continue;
                    }
                    auto c1 = complete_with_blank_planes(gw, *p1, Coord{7, 7, 1}, c.budget());
                    auto c2 = complete_with_blank_planes(gw, *p2, Coord{7, 7, 1}, c.budget());
                    if (c1.outcome != SolveOutcome::Found || c2.outcome != SolveOutcome::Found) {
                        ++cut;
                        continue;
                    }
                    auto res = verify_pasting(gw, c1.torus, c2.torus, 0, c.budget());
                    reports.push_back(to_json(res.report));
                    if (res.report.verdict == ClaimReport::Verified)
                        ++ok;
                    else if (res.report.verdict == ClaimReport::Counterexample)
                        ++bad;
                    else
                        ++cut;
                }
                ClaimReport rep;
                rep.claim = "pasting";
                rep.checked = ok + bad;
                rep.failed = bad;
                rep.params["pairs"] = std::to_string(samples);
                rep.params["verified"] = std::to_string(ok);
                rep.params["budget_cut"] = std::to_string(cut);
                rep.verdict = bad      ? ClaimReport::Counterexample
                              : cut    ? ClaimReport::BudgetExhausted
                                       : ClaimReport::Verified;
                emit(c, sh, "claim", jp, to_json(rep));
                return claim_exit(rep);
            }
            if (claim_name == "weak-mixing") {
                ShiftSpec gw = zoo::good_wave();
                Shift sh = zoo::by_name("good-wave");
                uint64_t ok = 0, bad = 0, cut = 0;
                for (uint64_t i = 0; i < samples; ++i) {
                    std::optional<Pattern> ps[4];
                    bool all = true;
                    for (int k = 0; k < 4; ++k) {
                        ps[k] = sample_admissible_pattern(gw, box(3, 1), c.seed * 101 + 4 * i + k,
                                                          c.budget());
                        all &= ps[k].has_value();
                    }
                    if (!all) {
                        ++cut;
                        continue;
                    }
                    auto res =
                        verify_weak_mixing_gluing(gw, *ps[0], *ps[1], *ps[2], *ps[3], c.budget());
                    if (res.report.verdict == ClaimReport::Verified)
                        ++ok;
                    else if (res.report.verdict == ClaimReport::Counterexample)
                        ++bad;
                    else
                        ++cut;
                }
                ClaimReport rep;
                rep.claim = "weak-mixing-gluing";
                rep.checked = ok + bad;
                rep.failed = bad;
                rep.params["quadruples"] = std::to_string(samples);
                rep.params["verified"] = std::to_string(ok);
                rep.params["budget_cut"] = std::to_string(cut);
                rep.verdict = bad      ? ClaimReport::Counterexample
                              : cut    ? ClaimReport::BudgetExhausted
                                       : ClaimReport::Verified;
                emit(c, sh, "claim", jp, to_json(rep));
                return claim_exit(rep);
            }
            if (claim_name == "worm-chain") {
                Shift worm = zoo::worm_shift();
                auto chain = worm_chain(worm, chain_from, chain_to, chain_window);
                ClaimReport rep;
                rep.claim = "worm-chain";
                rep.checked = chain.size();
                rep.params["from"] = std::to_string(chain_from);
                rep.params["to"] = std::to_string(chain_to);
                rep.params["length"] = std::to_string(chain.size());
                bool all_ok = true;
                for (const auto& w : chain) all_ok &= validate_witness(worm, w);
                rep.verdict = all_ok && chain.size() ==
                                      static_cast<uint64_t>(std::abs(chain_from - chain_to))
                                  ? ClaimReport::Verified
                                  : ClaimReport::Counterexample;
                emit(c, worm, "claim", jp, to_json(rep));
                return claim_exit(rep);
            }
            throw spec_error("unknown claim: " + claim_name);
        }
        if (rd->parsed()) {
            Shift sh = c.load();
            std::string svg;
            if (!torus_path.empty()) {
                TorusConfig t = load_torus_text(read_file(torus_path), sh.spec);
                std::vector<Coord> highlight;
                if (crest_flag && sh.name() == "good-wave") {
                    auto ex2 = extract_waves(sh.spec, t);
                    if (ex2.ok)
                        for (const auto& w : ex2.waves)
                            if (!w.flat())
                                for (const auto& cc : w.crest()) highlight.push_back(cc);
                }
                svg = render_svg(sh.spec, t, highlight);
            } else if (!pattern_path.empty()) {
                Pattern p = load_pattern_text(read_file(pattern_path), sh.spec);
                svg = render_svg(sh.spec, p);
            } else {
                throw spec_error("render: need --pattern or --torus");
            }
            if (c.out_path.empty()) throw spec_error("render: need --out");
            write_file(c.out_path, svg);
            std::cout << "# " << kVersion << " wrote " << c.out_path << "\n";
            return 0;
        }
    } catch (const spec_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
