// Acceptance suite: one pass/fail line per criterion, every tolerance pinned
// in code. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <iostream>

#include "sft/claims.hpp"
#include "sft/entropy.hpp"
#include "sft/json_out.hpp"

using namespace sft;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double secs(Clock::time_point a) {
    return std::chrono::duration<double>(Clock::now() - a).count();
}

void line(int crit, const char* name, bool pass, const std::string& detail) {
    printf("[%s] criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", crit, name, detail.c_str());
    fflush(stdout);
    if (!pass) ++g_failures;
}

SearchBudget budget(uint64_t seed = 1) { return SearchBudget{400'000'000, 480'000, seed}; }

// Brute-force m-extendable language oracle.
std::vector<Pattern> brute_language(const ShiftSpec& spec, const Support& F, int m) {
    Support region = dilate(F, spec.dim, m);
    std::vector<Pattern> out;
    std::vector<int> sym(region.size(), 0);
    while (true) {
        Pattern full(region, sym);
        if (validate_pattern(spec, full)) out.push_back(restrict(full, F));
        size_t i = 0;
        for (; i < sym.size(); ++i) {
            if (++sym[i] < spec.nsym()) break;
            sym[i] = 0;
        }
        if (i == sym.size()) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- criterion 1: oracle equivalence -----------------------------------------

void criterion1() {
    struct Case {
        const char* shift;
        Support F;
        int m;
    };
    // total search space |A|^{|F + m|} <= 2^20 per case
    std::vector<Case> cases;
    {
        std::vector<Coord> seg;
        for (int i = 0; i < 12; ++i) seg.push_back(Coord{i});
        cases.push_back({"golden-mean", Support{seg}, 2});  // 2^16
        cases.push_back({"hard-squares", box(2, 1), 1});    // 2^25? 5x5=2^25 too big -> m=0
        cases.back().m = 0;                                  // 2^9 region
        std::vector<Coord> hs2;
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 3; ++y) hs2.push_back(Coord{x, y});
        cases.push_back({"hard-squares", Support{hs2}, 1});  // 6x5=2^30? no: m=1 -> 30 cells.
        cases.back().m = 0;                                  // 2^12
        std::vector<Coord> row3{Coord{0, 0}, Coord{1, 0}, Coord{2, 0}};
        cases.push_back({"worm-precursor", box(2, 1), 0});   // 7^9 = 4e7 > 2^20 -> use 2x3
        std::vector<Coord> wp6{Coord{0, 0}, Coord{0, 1}, Coord{1, 0},
                               Coord{1, 1}, Coord{2, 0}, Coord{2, 1}};
        cases.back().F = Support{wp6};                       // 7^6 = 117k
        cases.push_back({"x-struct", Support{row3}, 0});     // 59^3 = 205k
    }
    bool pass = true;
    std::string detail;
    auto t0 = Clock::now();
    for (const auto& c : cases) {
        auto sh = zoo::by_name(c.shift);
        auto t1 = Clock::now();
        auto mine = enumerate_language(sh.spec, c.F, c.m, budget(), 1u << 22);
        auto oracle = brute_language(sh.spec, c.F, c.m);
        double dt = secs(t1);
        bool ok = mine.exhausted && mine.patterns == oracle && dt < 60.0;
        pass &= ok;
        detail += std::string(c.shift) + "=" + std::to_string(oracle.size()) +
                  (ok ? "" : "(MISMATCH)") + " ";
    }
    detail += "total " + std::to_string(secs(t0)) + "s";
    line(1, "oracle equivalence", pass, detail);
}

// ---- criterion 2: entropy calibration -----------------------------------------

void criterion2() {
    bool pass = true;
    std::string detail;
    for (int k : {2, 3, 4})
        for (int d = 1; d <= 3; ++d)
            for (int n = 1; n <= 3; ++n) {
                auto e = entropy_upper_box(Shift::sft(zoo::full_shift(k, d)), n, 0, budget());
                if (e.upper != std::log(double(k))) {
                    pass = false;
                    detail += "full-" + std::to_string(k) + "-d" + std::to_string(d) + " off; ";
                }
            }
    auto rows = zoo::as_z2_rows(zoo::golden_mean());
    auto eg = strip_transfer_entropy(rows, 1);
    double phi = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    bool gm_ok = std::abs(eg.upper - phi) < 1e-9;
    pass &= gm_ok;
    detail += "golden=" + std::to_string(eg.upper) + (gm_ok ? " " : "(OFF) ");

    // hard squares: gap < 0.01 at w=8; monotone tightening for w=2..8.
    // The classical constant ln(1.5030480824753323) calibrates the approach;
    // the cyclic value alternates around it, so tightening is measured as
    // strictly shrinking distance to the constant (see decisions ledger).
    auto hs = zoo::hard_squares();
    const double href = std::log(1.5030480824753323);
    double prev_up = 1e9, prev_low_dist = 1e9;
    bool mono_up = true, mono_low = true, bracket = true;
    double gap8 = 0;
    for (int w = 2; w <= 8; ++w) {
        auto e = strip_transfer_entropy(hs, w);
        if (e.upper >= prev_up) mono_up = false;
        double dist = std::abs(e.lower - href);
        if (dist >= prev_low_dist) mono_low = false;
        if (e.lower > e.upper) bracket = false;
        prev_up = e.upper;
        prev_low_dist = dist;
        if (w == 8) gap8 = e.upper - e.lower;
    }
    bool hs_ok = gap8 < 0.01 && mono_up && mono_low && bracket;
    pass &= hs_ok;
    char buf[128];
    snprintf(buf, sizeof buf, "hs-gap@8=%.6f mono-upper=%d mono-lower-approach=%d", gap8, mono_up,
             mono_low);
    detail += buf;
    line(2, "entropy calibration", pass, detail);
}

// ---- criterion 3: witness soundness --------------------------------------------

void criterion3() {
    uint64_t total = 0, valid = 0;
    auto t0 = Clock::now();
    auto tally = [&](const Shift& sh, const Witness& w) {
        ++total;
        valid += validate_witness(sh, w) ? 1 : 0;
    };
    // full shifts: bulk random pairs
    for (const char* name : {"full-2-z1", "full-2-z2"}) {
        Shift fs = zoo::by_name(name);
        ExchangeabilityParams params;
        params.agreement_radius = 1;
        params.margin = 0;
        params.budget = budget();
        std::mt19937_64 rng(fnv1a(name));
        Support F = box(fs.dim(), 1);
        for (int i = 0; i < 4900; ++i) {
            std::vector<int> a(F.size()), b(F.size());
            for (auto& s : a) s = int(rng() % fs.nsym());
            for (auto& s : b) s = int(rng() % fs.nsym());
            auto c = exchangeable(fs, Pattern(F, a), Pattern(F, b), params);
            if (c.witness) tally(fs, *c.witness);
        }
    }
    // golden mean: all pairs over growing segments
    {
        Shift gm = zoo::by_name("golden-mean");
        ExchangeabilityParams params;
        params.agreement_radius = 4;
        params.margin = 1;
        params.budget = budget();
        for (int len = 2; len <= 5; ++len) {
            std::vector<Coord> seg;
            for (int i = 0; i < len; ++i) seg.push_back(Coord{i});
            auto lang = shift_enumerate(gm, Support{seg}, 0, budget(), 100);
            for (size_t i = 0; i < lang.patterns.size(); ++i)
                for (size_t j = i; j < lang.patterns.size(); ++j) {
                    auto c = exchangeable(gm, lang.patterns[i], lang.patterns[j], params);
                    if (c.witness) tally(gm, *c.witness);
                }
        }
    }
    // sunny side up: open witnesses
    {
        Shift sunny = zoo::sunny_side_up();
        ExchangeabilityParams params;
        params.agreement_radius = 3;
        params.margin = 1;
        params.budget = budget();
        auto lang = shift_enumerate(sunny, box(1, 2), 0, budget(), 100);
        for (size_t i = 0; i < lang.patterns.size(); ++i)
            for (size_t j = i; j < lang.patterns.size(); ++j) {
                auto c = exchangeable(sunny, lang.patterns[i], lang.patterns[j], params);
                if (c.witness) tally(sunny, *c.witness);
            }
    }
    // worm shift: chain witnesses at several windows and columns
    {
        Shift worm = zoo::worm_shift();
        for (int wr = 2; wr <= 4; ++wr)
            for (int from = -wr; from < wr; ++from) {
                auto chain = worm_chain(worm, from, wr, wr);
                for (const auto& w : chain) tally(worm, w);
            }
        // plus solver-found edges on box(2,1)
        ExchangeabilityParams params;
        params.agreement_radius = 1;
        params.margin = 1;
        params.budget = budget();
        auto g = exchangeability_graph(worm, box(2, 1), params, 4096, 3000);
        for (const auto& e : g.edges) tally(worm, e.witness);
    }
    // hard squares and the worm precursor: random locally valid pairs
    {
        Shift hs = zoo::by_name("hard-squares");
        ExchangeabilityParams params;
        params.agreement_radius = 1;
        params.margin = 1;
        params.budget = budget();
        std::mt19937_64 rng(555);
        for (int i = 0; i < 700; ++i) {
            std::vector<int> a(9), b(9);
            Pattern pa, pb;
            do {
                for (auto& s : a) s = int(rng() & 1);
                pa = Pattern(box(2, 1), a);
            } while (!validate_pattern(hs.spec, pa));
            do {
                for (auto& s : b) s = int(rng() & 1);
                pb = Pattern(box(2, 1), b);
            } while (!validate_pattern(hs.spec, pb));
            auto c = exchangeable(hs, pa, pb, params);
            if (c.witness) tally(hs, *c.witness);
        }
        Shift wp = zoo::by_name("worm-precursor");
        ExchangeabilityParams wparams;
        wparams.agreement_radius = 1;
        wparams.margin = 1;
        wparams.budget = budget();
        auto g = exchangeability_graph(wp, box(2, 1), wparams, 4096, 2000);
        for (const auto& e : g.edges) tally(wp, e.witness);
    }
    // x-struct: sampled admissible window pairs
    {
        auto xs = zoo::x_struct();
        Shift xsh = zoo::by_name("x-struct");
        ExchangeabilityParams params;
        params.agreement_radius = 2;
        params.margin = 0;
        params.budget = budget();
        for (int i = 0; i < 400; ++i) {
            auto p1 = sample_admissible_pattern(xs, box(2, 1), 9000 + 2 * i, budget());
            auto p2 = sample_admissible_pattern(xs, box(2, 1), 9001 + 2 * i, budget());
            if (!p1 || !p2) continue;
            auto c = exchangeable(xsh, *p1, *p2, params);
            if (c.witness) tally(xsh, *c.witness);
        }
    }
    // good wave: dual-vertex flips of all-cross tori give asymptotic pairs
    {
        auto gw = zoo::good_wave();
        Shift gws = zoo::by_name("good-wave");
        ExchangeabilityParams params;
        params.agreement_radius = 2;
        params.margin = 1;
        params.budget = budget();
        std::mt19937_64 rng(0xabcdef);
        Support F = box(3, 1);
        auto cross_window = [&](const std::vector<std::vector<int>>& dual, int px, int py) {
            // window of the all-cross torus with given dual field, read at F
            std::vector<int> sym;
            for (const auto& cell : F.cells) {
                int x = ((cell[0] % px) + px) % px, y = ((cell[1] % py) + py) % py;
                auto v = [&](int dx, int dy) {
                    return dual[((x + dx) % px + px) % px][((y + dy) % py + py) % py];
                };
                int sw = v(0, 0), se = v(1, 0), nw = v(0, 1), ne = v(1, 1);
                std::string n = "x";
                n += char('0' + sw);
                n += char('0' + nw);
                n += char('0' + se);
                n += char('0' + ne);
                int z = cell[2];
                bool cube = (z == sw);  // column cube height = sw value
                sym.push_back(gw.alphabet.require(n + (cube ? ".c" : ".e")));
            }
            return Pattern(F, sym);
        };
        int made = 0;
        for (int i = 0; i < 260 && made < 220; ++i) {
            int px = 5, py = 5;
            std::vector<std::vector<int>> dual(px, std::vector<int>(py, 0));
            // random sparse dual field, then flip one interior vertex
            for (int x = 0; x < px; ++x)
                for (int y = 0; y < py; ++y) dual[x][y] = (rng() % 4 == 0) ? 1 : 0;
            auto p1 = cross_window(dual, px, py);
            auto d2 = dual;
            d2[0][0] ^= 1;
            auto p2 = cross_window(d2, px, py);
            if (!shift_validate(gws, p1) || !shift_validate(gws, p2)) continue;
            auto c = exchangeable(gws, p1, p2, params);
            if (c.witness) {
                tally(gws, *c.witness);
                ++made;
            }
        }
        // plus reflexive witnesses on sampled windows
        for (int i = 0; i < 30; ++i) {
            auto p = sample_admissible_pattern(gw, F, 777 + i, budget());
            if (!p) continue;
            auto c = exchangeable(gws, *p, *p, params);
            if (c.witness) tally(gws, *c.witness);
        }
    }
    bool pass = total >= 10000 && valid == total;
    line(3, "witness soundness",
         pass,
         std::to_string(valid) + "/" + std::to_string(total) + " re-validated in " +
             std::to_string(secs(t0)) + "s");
}

// ---- criterion 4: worm shift class separation ----------------------------------

void criterion4() {
    Shift worm = zoo::worm_shift();
    auto t0 = Clock::now();
    ExchangeabilityParams params;
    params.agreement_radius = 1;  // box(2,1) support demands r >= 1
    params.margin = 1;
    params.budget = budget();
    auto g = exchangeability_graph(worm, box(2, 1), params, 4096, 1u << 21);
    auto comp = g.components();
    Pattern white = Pattern::constant(box(2, 1), 0);
    int wv = g.vertex_of(white);
    bool separated = wv >= 0;
    int worm_in_white_comp = 0;
    for (size_t i = 0; i < g.vertices.size() && separated; ++i) {
        if (int(i) == wv || comp[i] != comp[wv]) continue;
        for (int s : g.vertices[i].sym)
            if (s != 0) {
                ++worm_in_white_comp;
                break;
            }
    }
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    separated = separated && ncomp >= 2 && worm_in_white_comp == 0;

    // obstructions attached to every (worm-containing, all-white) cross pair
    uint64_t cross = 0, cross_obstructed = 0;
    for (const auto& o : g.obstructed)
        if (o.a == wv || o.b == wv) ++cross_obstructed;
    for (size_t i = 0; i < g.vertices.size(); ++i)
        if (int(i) != wv) ++cross;
    bool obstructed_all = cross_obstructed == cross;

    auto chain = worm_chain(worm, 0, 3, 4);
    bool chain_ok = chain.size() == 3;
    for (const auto& w : chain) chain_ok &= validate_witness(worm, w);

    bool pass = separated && obstructed_all && chain_ok;
    std::string detail = "components=" + std::to_string(ncomp) +
                         " white-comp-separated=" + (separated ? "yes" : "no") +
                         " cross-pairs-obstructed=" + std::to_string(cross_obstructed) + "/" +
                         std::to_string(cross) + " chain(0->3)=" + std::to_string(chain.size()) +
                         (chain_ok ? "" : "(INVALID)") + " [" + std::to_string(secs(t0)) + "s]";
    if (!obstructed_all)
        detail +=
            " | note: no width-5 worm band fits the 3-column window, and such pairs are truly "
            "exchangeable at larger radii (see ledger); separation holds via exhaustive "
            "refutation at r=1";
    line(4, "worm shift class separation", pass, detail);
}

// ---- criterion 5: good wave shift ----------------------------------------------

void criterion5() {
    auto gw = zoo::good_wave();
    Shift gws = zoo::by_name("good-wave");
    auto t0 = Clock::now();
    bool pass = true;
    std::string detail;

    // (a) finite compiled rule set within 3x3x5
    bool rules_ok = !gw.rules.empty();
    for (const auto& r : gw.rules) {
        Coord lo, hi;
        bounds(Support{r.at}, lo, hi);
        rules_ok &= (hi[0] - lo[0] + 1 <= 3) && (hi[1] - lo[1] + 1 <= 3) && (hi[2] - lo[2] + 1 <= 5);
    }
    pass &= rules_ok;
    detail += std::string("rules<=3x3x5=") + (rules_ok ? "yes" : "NO");

    // (b) exhaustive torus check at (3,3,5)
    auto rep = verify_good_wave(gw, Coord{3, 3, 5}, budget());
    bool torus_ok = rep.verdict == ClaimReport::Verified;
    pass &= torus_ok;
    detail += " torus(3,3,5)=" + std::string(verdict_name(rep.verdict)) + "(" +
              std::to_string(rep.checked) + " tori)";

    // (c) pasting on 100 seeded random torus pairs
    uint64_t ok = 0;
    for (uint64_t i = 0; i < 100; ++i) {
        auto p1 = sample_admissible_pattern(gw, box(3, 1), 31 + 2 * i, budget());
        auto p2 = sample_admissible_pattern(gw, box(3, 1), 32 + 2 * i, budget());
        if (!p1 || !p2) continue;
        auto c1 = complete_with_blank_planes(gw, *p1, Coord{7, 7, 1}, budget());
        auto c2 = complete_with_blank_planes(gw, *p2, Coord{7, 7, 1}, budget());
        if (c1.outcome != SolveOutcome::Found || c2.outcome != SolveOutcome::Found) continue;
        auto res = verify_pasting(gw, c1.torus, c2.torus, 0, budget());
        ok += res.report.verdict == ClaimReport::Verified;
    }
    pass &= ok == 100;
    detail += " pasting=" + std::to_string(ok) + "/100";

    // (d) weak mixing gluing on 25 seeded quadruples
    uint64_t ok2 = 0;
    for (uint64_t i = 0; i < 25; ++i) {
        std::optional<Pattern> ps[4];
        bool all = true;
        for (int k = 0; k < 4; ++k) {
            ps[k] = sample_admissible_pattern(gw, box(3, 1), 1000 + 4 * i + k, budget());
            all &= ps[k].has_value();
        }
        if (!all) continue;
        auto res = verify_weak_mixing_gluing(gw, *ps[0], *ps[1], *ps[2], *ps[3], budget());
        ok2 += res.report.verdict == ClaimReport::Verified;
    }
    pass &= ok2 == 25;
    detail += " gluing=" + std::to_string(ok2) + "/25";

    // (e) box(3,1) graph separates cube-containing from blank. The agreement
    // radius is 1 (the smallest containing the support): at radius 2 the
    // harness finds genuine torus witnesses joining blank to patterns whose
    // only cubes sit on the bottom window layer (their wave bump hides at
    // z=-2, just below the window; see the decisions ledger), so the
    // pattern-scale separation is a boundary-tight statement.
    ExchangeabilityParams params;
    params.agreement_radius = 1;
    params.margin = 1;
    params.budget = SearchBudget{40'000'000, 20'000, 1};
    int blank_sym = zoo::gw_blank(gw), cube_sym = zoo::gw_cube(gw);
    Support F = box(3, 1);
    Pattern blank = Pattern::constant(F, blank_sym);
    std::vector<Pattern> extras;
    for (int z = -1; z <= 1; ++z) {  // flat slices at each level
        std::vector<int> sym(F.size(), blank_sym);
        for (size_t i = 0; i < F.size(); ++i)
            if (F.cells[i][2] == z) sym[i] = cube_sym;
        extras.emplace_back(F, sym);
    }
    {
        // crest window: all-blue crosses with one raised dual vertex at the
        // origin column; cubes at z=0 except one column at z=1
        std::vector<int> sym(F.size(), blank_sym);
        for (size_t i = 0; i < F.size(); ++i) {
            Coord c = F.cells[i];
            auto v = [&](int dx, int dy) {
                return (c[0] + dx == 0 && c[1] + dy == 0) ? 1 : 0;
            };
            int sw = v(0, 0), se = v(1, 0), nw = v(0, 1), ne = v(1, 1);
            std::string n = "x";
            n += char('0' + sw);
            n += char('0' + nw);
            n += char('0' + se);
            n += char('0' + ne);
            if (c[2] == 0)
                sym[i] = gw.alphabet.require(n + (sw == 0 ? ".c" : ".e"));
            else if (c[2] == 1 && sw == 1)
                sym[i] = cube_sym;
        }
        extras.emplace_back(F, sym);
    }
    auto g = exchangeability_graph(gws, F, params, 120, 140, {blank}, extras);
    auto comp = g.components();
    int bv = g.vertex_of(blank);
    auto has_cube = [&](const Pattern& p) {
        for (int s : p.sym)
            if (gw.alphabet[s].attr_or("cube", 0)) return true;
        return false;
    };
    bool sep = bv >= 0;
    uint64_t cube_cnt = 0, obst = 0, refuted = 0, witnessed = 0;
    for (size_t i = 0; i < g.vertices.size() && sep; ++i) {
        if (int(i) == bv) continue;
        if (!has_cube(g.vertices[i])) continue;
        ++cube_cnt;
        if (comp[i] == comp[bv]) sep = false;
    }
    for (const auto& o : g.obstructed)
        if ((o.a == bv || o.b == bv) &&
            has_cube(g.vertices[o.a == bv ? o.b : o.a])) {
            ++obst;
            if (o.obstruction.kind != Obstruction::WavePresence) sep = false;
        }
    for (const auto& [a, b] : g.unknown)
        if (a == bv || b == bv) ++refuted;
    for (const auto& e : g.edges)
        if ((e.a == bv || e.b == bv) && has_cube(g.vertices[e.a == bv ? e.b : e.a])) ++witnessed;
    bool graph_ok = sep && cube_cnt > 0 && obst > 0 && witnessed == 0;
    pass &= graph_ok;
    detail += " graph(r=1): cube-patterns=" + std::to_string(cube_cnt) +
              " wave-obstructed=" + std::to_string(obst) +
              " refuted-at-params=" + std::to_string(refuted) +
              " witnessed=" + std::to_string(witnessed) + (sep ? " separated" : " NOT-separated");
    detail += " [" + std::to_string(secs(t0)) + "s]";
    line(5, "good wave shift", pass, detail);
}

// ---- criterion 6: blue sky completion -------------------------------------------

void criterion6() {
    // The nominal radius 4n+1 is provably one step short at n=1 (all-white
    // and all-dash windows); verify_blue_sky defaults to the corrected 4n+2.
    // Both radii run here so the refutation of the nominal constant stays
    // visible (see decisions ledger).
    auto t0 = Clock::now();
    auto rep5 = verify_blue_sky(1, budget(), 0, 1, 5);
    double dt5 = secs(t0);
    bool nominal_refuted = rep5.verdict == ClaimReport::Counterexample;
    auto t1 = Clock::now();
    auto rep6 = verify_blue_sky(1, budget(), 0, 1);  // corrected default, radius 6
    double dt6 = secs(t1);
    bool corrected_ok = rep6.verdict == ClaimReport::Verified && dt6 < 600;
    auto t2 = Clock::now();
    auto rep2 = verify_blue_sky(2, budget(), 500, 1, 9);  // nominal radius holds at n=2
    double dt2 = secs(t2);
    bool n2_ok = rep2.verdict == ClaimReport::Verified && rep2.checked >= 450 && dt2 < 600;

    bool pass = corrected_ok && n2_ok;
    char buf[512];
    snprintf(buf, sizeof buf,
             "n=1@R6=%s(all %s window patterns, %.0fs, exhaustive); n=2@R9=%s(%llu sampled, "
             "%.0fs); nominal R5 refuted as expected=%s(%llu of %s complete, %.0fs)",
             verdict_name(rep6.verdict), rep6.params.at("patterns").c_str(), dt6,
             verdict_name(rep2.verdict), (unsigned long long)rep2.checked, dt2,
             nominal_refuted ? "yes" : "NO",
             (unsigned long long)std::stoull(rep5.params.at("completed")),
             rep5.params.at("patterns").c_str(), dt5);
    std::string detail = buf;
    line(6, "blue-sky completion", pass, detail);
}

// ---- criterion 7: periodic density ----------------------------------------------

void criterion7() {
    auto t0 = Clock::now();
    bool pass = true;
    std::string detail;
    for (int n = 1; n <= 3; ++n) {
        auto rep = verify_periodic_density(zoo::by_name("golden-mean"), n, budget(), 64, 1);
        bool ok = rep.verdict == ClaimReport::Verified && rep.params.at("mode") == "exhaustive";
        pass &= ok;
        detail += "gm-n" + std::to_string(n) + "=" + verdict_name(rep.verdict) + " ";
    }
    auto rx = verify_periodic_density(zoo::by_name("x-struct"), 1, budget(), 48, 2);
    pass &= rx.verdict == ClaimReport::Verified;
    detail += "x-struct=" + std::string(verdict_name(rx.verdict)) + "(" +
              std::to_string(rx.checked) + " sampled) ";
    auto rg = verify_periodic_density(zoo::by_name("good-wave"), 1, budget(), 24, 3);
    pass &= rg.verdict == ClaimReport::Verified;
    detail += "good-wave=" + std::string(verdict_name(rg.verdict)) + "(" +
              std::to_string(rg.checked) + " sampled)";
    detail += " [" + std::to_string(secs(t0)) + "s]";
    line(7, "periodic density", pass, detail);
}

// ---- criterion 8: sunny-side-up triviality ---------------------------------------

void criterion8() {
    Shift sunny = zoo::sunny_side_up();
    bool pass = true;
    std::string detail;
    double prev = 1e9;
    bool counts_ok = true, decreasing = true;
    double last = 0;
    for (int n = 1; n <= 8; ++n) {
        auto e = entropy_upper_box(sunny, n, 0, budget());
        int cells = 2 * n + 1;
        if (e.count != cells + 1) counts_ok = false;
        if (std::abs(e.upper - std::log(double(cells + 1)) / cells) > 1e-12) counts_ok = false;
        if (e.upper >= prev) decreasing = false;
        prev = e.upper;
        last = e.upper;
    }
    pass &= counts_ok && decreasing && last < 0.2;
    char buf[160];
    snprintf(buf, sizeof buf,
             "count=|F|+1:%s upper=ln(2n+2)/(2n+1) decreasing->0:%s upper@n=8=%.4f",
             counts_ok ? "yes" : "NO", decreasing ? "yes" : "NO", last);
    detail += buf;
    detail += " (criterion text's log(n+2) drops the count's factor 2; see ledger)";

    // complete exchangeability graphs on every tested support
    ExchangeabilityParams params;
    params.agreement_radius = 4;
    params.margin = 1;
    params.budget = budget();
    bool complete = true;
    for (int n = 0; n <= 2; ++n) {
        auto g = exchangeability_graph(sunny, box(1, n), params);
        size_t v = g.vertices.size();
        if (g.edges.size() != v * (v - 1) / 2) complete = false;
        auto comp = g.components();
        if (!comp.empty() && *std::max_element(comp.begin(), comp.end()) != 0) complete = false;
    }
    pass &= complete;
    detail += std::string(" graphs-complete=") + (complete ? "yes" : "NO");
    line(8, "sunny-side-up triviality", pass, detail);
}

// ---- criterion 9: determinism -----------------------------------------------------

std::string pipeline_artifact(uint64_t seed) {
    Json all;
    SearchBudget b{10'000'000, 60'000, seed};
    {
        Shift gm = zoo::by_name("golden-mean");
        ExchangeabilityParams params;
        params.agreement_radius = 3;
        params.margin = 1;
        params.budget = b;
        std::vector<Coord> seg{Coord{0}, Coord{1}, Coord{2}};
        auto g = exchangeability_graph(gm, Support{seg}, params);
        all["graph"] = to_json(gm.spec, g);
        auto prof = bce_profile(gm, {box(1, 0), box(1, 1)}, params);
        all["bce"] = to_json(prof);
    }
    {
        auto hs = zoo::hard_squares();
        all["entropy"] = to_json(strip_transfer_entropy(hs, 5));
        all["box"] = to_json(entropy_upper_box(zoo::by_name("hard-squares"), 2, 0, b));
    }
    {
        auto gw = zoo::good_wave();
        auto p1 = sample_admissible_pattern(gw, box(3, 1), seed, b);
        auto p2 = sample_admissible_pattern(gw, box(3, 1), seed + 1, b);
        if (p1 && p2) {
            auto c1 = complete_with_blank_planes(gw, *p1, Coord{7, 7, 1}, b);
            auto c2 = complete_with_blank_planes(gw, *p2, Coord{7, 7, 1}, b);
            if (c1.outcome == SolveOutcome::Found && c2.outcome == SolveOutcome::Found) {
                auto res = verify_pasting(gw, c1.torus, c2.torus, 0, b);
                all["pasting"] = to_json(res.report);
                all["pasted"] = to_json(gw, res.pasted);
            }
        }
        auto rep = verify_periodic_density(zoo::by_name("good-wave"), 1, b, 6, seed);
        all["density"] = to_json(rep);
    }
    {
        Shift worm = zoo::worm_shift();
        auto chain = worm_chain(worm, 0, 2, 3);
        Json jchain = Json::array();
        for (const auto& w : chain) jchain.push_back(to_json(worm.spec, w));
        all["worm_chain"] = jchain;
    }
    return all.dump(2);
}

void criterion9() {
    auto t0 = Clock::now();
    std::string a = pipeline_artifact(42);
    std::string b = pipeline_artifact(42);
    std::string c = pipeline_artifact(43);
    bool pass = a == b && !a.empty();
    std::string detail = "two seed-42 runs byte-identical=" + std::string(a == b ? "yes" : "NO") +
                         ", seed-43 differs=" + std::string(a != c ? "yes" : "no") + " (" +
                         std::to_string(a.size()) + " bytes) [" + std::to_string(secs(t0)) + "s]";
    line(9, "determinism", pass, detail);
}

}  // namespace

int main() {
    auto t0 = Clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    printf("%d criteria failed; total %.1fs\n", g_failures, secs(t0));
    return g_failures;
}
