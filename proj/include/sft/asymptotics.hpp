#pragma once

#include <optional>
#include <queue>
#include <set>

#include "sft/zoo.hpp"

namespace sft {

struct ExchangeabilityParams {
    int agreement_radius = 2;  // pair must agree outside box(dim, r); box must contain F
    int margin = 1;            // margin used for language membership
    enum Mode { TorusMode, OpenMode } mode = TorusMode;
    Coord periods_override{0, 0, 0};  // 0 -> derived as 2*(r+margin)+1 per axis
    SearchBudget budget;

    Coord periods(int dim) const {
        Coord p{1, 1, 1};
        for (int i = 0; i < dim; ++i)
            p[i] = periods_override[i] > 0 ? periods_override[i]
                                           : 2 * (agreement_radius + margin) + 1;
        return p;
    }
};

// A certificate that two patterns are exchangeable. Torus witnesses are a
// genuine asymptotic pair of periodic configurations; open witnesses are
// window pairs and certify only when `certifying` is set (custom shifts whose
// validator speaks for whole configurations).
struct Witness {
    enum Kind { TorusPair, OpenPair } kind = TorusPair;
    Pattern p, q;  // the exchanged patterns, same support
    int agreement_radius = 0;
    TorusConfig left_torus, right_torus;  // TorusPair
    Pattern left_open, right_open;        // OpenPair
    Support differing_cells;
    bool certifying = true;
};

// Replayable proof of non-exchangeability via a registered structural
// invariant.
struct Obstruction {
    enum Kind { WormColumn, WavePresence } kind = WormColumn;
    bool swapped = false;  // certificate reads (q,p) instead of (p,q)
    Coord cell;            // worm: non-white cell of p. wave: cube cell of p.
    int band_lo = 0, band_hi = 0;  // worm: column band [x0-2, x0+2]
    int row = 0;                   // worm: a row with band x row inside F, all white in q
    int z_lo = 0, z_hi = 0;        // wave: [z0-1, z0+1] checked cube-free in q
    std::string note;
};

inline const char* obstruction_kind_name(Obstruction::Kind k) {
    return k == Obstruction::WormColumn ? "worm-column" : "wave-presence";
}

// Per-shift registry of obstruction invariants.
inline std::vector<Obstruction::Kind> registered_obstructions(const Shift& sh) {
    if (sh.name() == "worm-shift" || sh.name() == "worm-precursor")
        return {Obstruction::WormColumn};
    if (sh.name() == "good-wave") return {Obstruction::WavePresence};
    return {};
}

namespace detail {

inline bool is_attr(const Shift& sh, int sym, const char* key, int v) {
    return sh.spec.alphabet[sym].attr_or(key, 0) == v;
}

// Worm-column invariant. Soundness: a non-white cell of p lies on a
// bi-infinite worm path confined to two adjacent columns; agreement outside
// any box forces the all-white side to carry a worm within the five-column
// band around that cell, and that worm meets every row. A full band row of
// white cells in q is therefore contradictory.
inline std::optional<Obstruction> try_worm_column(const Shift& sh, const Pattern& p,
                                                  const Pattern& q) {
    const Support& F = p.support;
    for (size_t i = 0; i < p.size(); ++i) {
        if (is_attr(sh, p.sym[i], "nonwhite", 0)) continue;
        Coord c = p.support.cells[i];
        // Need the full band [x0-2, x0+2] x {row} inside F with q white.
        for (const auto& rc : F.cells) {
            int row = rc[1];
            bool ok = true;
            for (int x = c[0] - 2; x <= c[0] + 2 && ok; ++x) {
                Coord cell{x, row};
                if (!F.contains(cell) || is_attr(sh, q.at(cell), "nonwhite", 1)) ok = false;
            }
            if (ok) {
                Obstruction o;
                o.kind = Obstruction::WormColumn;
                o.cell = c;
                o.band_lo = c[0] - 2;
                o.band_hi = c[0] + 2;
                o.row = row;
                o.note = "worm through p-cell must cross the white band row of q";
                return o;
            }
        }
    }
    return std::nullopt;
}

// Wave-presence invariant. Soundness: a cube of p lies on a good wave; any
// configuration agreeing with it outside a box carries a good wave whose
// height at the same column differs by at most 2, and a height difference of
// exactly 2 forces wire lattices on consecutive z-levels across the pair,
// contradicting structural isolation. A cube-free column section
// [z0-1, z0+1] of q is therefore contradictory.
inline std::optional<Obstruction> try_wave_presence(const Shift& sh, const Pattern& p,
                                                    const Pattern& q) {
    const Support& F = p.support;
    for (size_t i = 0; i < p.size(); ++i) {
        if (is_attr(sh, p.sym[i], "cube", 0)) continue;
        Coord c = p.support.cells[i];
        bool ok = true;
        for (int z = c[2] - 1; z <= c[2] + 1 && ok; ++z) {
            Coord cell{c[0], c[1], z};
            if (!F.contains(cell) || is_attr(sh, q.at(cell), "cube", 1)) ok = false;
        }
        if (ok) {
            Obstruction o;
            o.kind = Obstruction::WavePresence;
            o.cell = c;
            o.z_lo = c[2] - 1;
            o.z_hi = c[2] + 1;
            o.note = "good wave through p-cube forces a q-cube within height 1 of the column";
            return o;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Replay a certificate against (p, q). True iff internally consistent and
// the geometric conditions making the invariant sound hold.
inline bool check_obstruction(const Shift& sh, const Obstruction& o, const Pattern& p_in,
                              const Pattern& q_in) {
    auto kinds = registered_obstructions(sh);
    if (std::find(kinds.begin(), kinds.end(), o.kind) == kinds.end())
        throw spec_error("UnknownObstructionKind for shift " + sh.name());
    const Pattern& p = o.swapped ? q_in : p_in;
    const Pattern& q = o.swapped ? p_in : q_in;
    if (!(p.support == q.support)) return false;
    const Support& F = p.support;
    if (o.kind == Obstruction::WormColumn) {
        if (!F.contains(o.cell) || detail::is_attr(sh, p.at(o.cell), "nonwhite", 0)) return false;
        if (o.band_lo != o.cell[0] - 2 || o.band_hi != o.cell[0] + 2) return false;  // width-5 band
        for (int x = o.band_lo; x <= o.band_hi; ++x) {
            Coord cell{x, o.row};
            if (!F.contains(cell)) return false;
            if (detail::is_attr(sh, q.at(cell), "nonwhite", 1)) return false;
        }
        return true;
    }
    if (o.kind == Obstruction::WavePresence) {
        if (!F.contains(o.cell) || detail::is_attr(sh, p.at(o.cell), "cube", 0)) return false;
        if (o.z_lo != o.cell[2] - 1 || o.z_hi != o.cell[2] + 1) return false;
        for (int z = o.z_lo; z <= o.z_hi; ++z) {
            Coord cell{o.cell[0], o.cell[1], z};
            if (!F.contains(cell)) return false;
            if (detail::is_attr(sh, q.at(cell), "cube", 1)) return false;
        }
        return true;
    }
    return false;
}

struct Classification {
    enum Verdict { Exchangeable, NoWitnessUpTo, Obstructed } verdict = NoWitnessUpTo;
    std::optional<Witness> witness;
    std::optional<Obstruction> obstruction;
    bool exhausted = false;  // NoWitnessUpTo: params-level refutation vs budget cut
    SearchStats stats;
};

// Independent witness checker: everything is re-verified without the solver.
inline bool validate_witness(const Shift& sh, const Witness& w) {
    if (!(w.p.support == w.q.support)) return false;
    Support K = box(sh.dim(), w.agreement_radius);
    if (!w.p.support.subset_of(K)) return false;
    if (w.kind == Witness::TorusPair) {
        const TorusConfig& a = w.left_torus;
        const TorusConfig& b = w.right_torus;
        if (!(a.periods == b.periods) || a.dim != b.dim) return false;
        if (!shift_validate_torus(sh, a) || !shift_validate_torus(sh, b)) return false;
        if (!(torus_window(a, w.p.support) == w.p)) return false;
        if (!(torus_window(b, w.q.support) == w.q)) return false;
        // Equality outside K over the fundamental domain, in centered coords.
        for (int x = 0; x < a.periods[0]; ++x)
            for (int y = 0; y < (a.dim > 1 ? a.periods[1] : 1); ++y)
                for (int z = 0; z < (a.dim > 2 ? a.periods[2] : 1); ++z) {
                    Coord c{x, y, z};
                    Coord centered = c;
                    for (int i = 0; i < a.dim; ++i)
                        if (centered[i] > a.periods[i] / 2) centered[i] -= a.periods[i];
                    if (K.contains(centered)) continue;
                    if (a.at(c) != b.at(c)) return false;
                }
        return true;
    }
    // Open pair: window-level checks only.
    const Pattern& a = w.left_open;
    const Pattern& b = w.right_open;
    if (!(a.support == b.support)) return false;
    if (!shift_validate(sh, a) || !shift_validate(sh, b)) return false;
    if (!(restrict(a, w.p.support) == w.p) || !(restrict(b, w.q.support) == w.q)) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!K.contains(a.support.cells[i]) && a.sym[i] != b.sym[i]) return false;
    return true;
}

inline Support witness_differing_cells(const Witness& w) {
    std::vector<Coord> diff;
    if (w.kind == Witness::TorusPair) {
        const TorusConfig& a = w.left_torus;
        for (int x = 0; x < a.periods[0]; ++x)
            for (int y = 0; y < (a.dim > 1 ? a.periods[1] : 1); ++y)
                for (int z = 0; z < (a.dim > 2 ? a.periods[2] : 1); ++z) {
                    Coord c{x, y, z};
                    if (a.at(c) != w.right_torus.at(c)) {
                        Coord centered = c;
                        for (int i = 0; i < a.dim; ++i)
                            if (centered[i] > a.periods[i] / 2) centered[i] -= a.periods[i];
                        diff.push_back(centered);
                    }
                }
    } else {
        for (size_t i = 0; i < w.left_open.size(); ++i)
            if (w.left_open.sym[i] != w.right_open.sym[i])
                diff.push_back(w.left_open.support.cells[i]);
    }
    return Support{diff};
}

// Exchangeability of p and q over the same support. Witness search runs in
// torus mode by default (sound, not complete); a NoWitnessUpTo verdict is
// only a refutation at these params, never a proof of non-exchangeability.
// Obstructed verdicts carry a replayable structural certificate.
inline Classification exchangeable(const Shift& sh, const Pattern& p, const Pattern& q,
                                   const ExchangeabilityParams& params) {
    if (!(p.support == q.support)) throw spec_error("exchangeable: supports differ");
    if (!shift_validate(sh, p) || !shift_validate(sh, q))
        throw spec_error("exchangeable: InvalidInput, pattern not locally valid");
    Support K = box(sh.dim(), params.agreement_radius);
    if (!p.support.subset_of(K))
        throw spec_error("exchangeable: agreement box does not contain the support");

    Classification res;

    // Reflexive pairs: any completion paired with itself.
    if (p == q) {
        auto tr = shift_complete_torus(sh, p, params.periods(sh.dim()), params.budget);
        if (tr.outcome == SolveOutcome::Found) {
            Witness w;
            w.kind = Witness::TorusPair;
            w.p = p;
            w.q = q;
            w.agreement_radius = params.agreement_radius;
            w.left_torus = tr.torus;
            w.right_torus = tr.torus;
            w.certifying = true;
            res.verdict = Classification::Exchangeable;
            res.witness = w;
            return res;
        }
        res.verdict = Classification::NoWitnessUpTo;
        res.exhausted = tr.outcome == SolveOutcome::Refuted;
        return res;
    }

    // Registered structural obstructions first; they decide the pair outright.
    for (auto kind : registered_obstructions(sh)) {
        std::optional<Obstruction> o;
        if (kind == Obstruction::WormColumn) {
            o = detail::try_worm_column(sh, p, q);
            if (!o) {
                o = detail::try_worm_column(sh, q, p);
                if (o) o->swapped = true;
            }
        } else if (kind == Obstruction::WavePresence) {
            o = detail::try_wave_presence(sh, p, q);
            if (!o) {
                o = detail::try_wave_presence(sh, q, p);
                if (o) o->swapped = true;
            }
        }
        if (o && check_obstruction(sh, *o, p, q)) {
            res.verdict = Classification::Obstructed;
            res.obstruction = o;
            return res;
        }
    }

    // Custom shifts: constructed open witnesses (zero padding for
    // sunny-side-up style validators).
    if (sh.kind == Shift::Custom) {
        Support window = box(sh.dim(), params.agreement_radius + params.margin);
        std::vector<int> a, b;
        for (const auto& c : window.cells) {
            a.push_back(p.defined(c) ? p.at(c) : 0);
            b.push_back(q.defined(c) ? q.at(c) : 0);
        }
        Witness w;
        w.kind = Witness::OpenPair;
        w.p = p;
        w.q = q;
        w.agreement_radius = params.agreement_radius;
        w.left_open = Pattern(window, a);
        w.right_open = Pattern(window, b);
        w.certifying = true;  // padding extends to configurations for these validators
        if (validate_witness(sh, w)) {
            w.differing_cells = witness_differing_cells(w);
            res.verdict = Classification::Exchangeable;
            res.witness = w;
            return res;
        }
        res.verdict = Classification::NoWitnessUpTo;
        res.exhausted = false;
        return res;
    }

    // Joint torus (or open window) search.
    const ShiftSpec& work = (sh.kind == Shift::Sofic) ? sh.cover : sh.spec;
    std::vector<int> cls;
    if (sh.kind == Shift::Sofic && !sh.code.cellwise_map(cls))
        throw spec_error("exchangeable: sofic code must be cellwise");

    Csp csp = [&] {
        if (params.mode == ExchangeabilityParams::TorusMode)
            return Csp::on_torus(work, params.periods(sh.dim()), 2);
        Support window = box(sh.dim(), params.agreement_radius + params.margin);
        return Csp::on_support(work, window, 2);
    }();
    // Pins.
    auto pin_side = [&](int layer, const Pattern& pat) {
        for (size_t i = 0; i < pat.size(); ++i) {
            int v = csp.var_at(layer, pat.support.cells[i]);
            if (sh.kind == Shift::Sofic) {
                SymbolSet pre;
                for (int s = 0; s < work.nsym(); ++s)
                    if (cls[s] == pat.sym[i]) pre.set(s);
                csp.restrict_var(v, pre);
            } else {
                csp.pin(v, pat.sym[i]);
            }
        }
    };
    pin_side(0, p);
    pin_side(1, q);
    // Equality (on factor symbols for sofic) outside K.
    const PairTable* link_table =
        sh.kind == Shift::Sofic ? csp.same_class_table(cls) : csp.equality_table();
    for (int i = 0; i < csp.ncells(); ++i) {
        Coord c = csp.cells[i];
        Coord centered = c;
        if (params.mode == ExchangeabilityParams::TorusMode)
            for (int k = 0; k < sh.dim(); ++k)
                if (centered[k] > csp.periods[k] / 2) centered[k] -= csp.periods[k];
        if (K.contains(centered)) continue;
        csp.link(i, csp.ncells() + i, link_table);
    }
    Solver solver(csp, params.budget);
    std::vector<int> sol;
    SearchStatus st = solver.solve(&sol, res.stats);
    if (st == SearchStatus::Sat) {
        Witness w;
        w.p = p;
        w.q = q;
        w.agreement_radius = params.agreement_radius;
        int n = csp.ncells();
        if (params.mode == ExchangeabilityParams::TorusMode) {
            w.kind = Witness::TorusPair;
            TorusConfig a, b;
            a.dim = b.dim = sh.dim();
            a.periods = b.periods = csp.periods;
            a.data.assign(sol.begin(), sol.begin() + n);
            b.data.assign(sol.begin() + n, sol.end());
            if (sh.kind == Shift::Sofic) {
                a = apply_code(sh.code, a);
                b = apply_code(sh.code, b);
            }
            w.left_torus = std::move(a);
            w.right_torus = std::move(b);
            w.certifying = true;
        } else {
            w.kind = Witness::OpenPair;
            Support window = Support{csp.cells};
            Pattern a(window, std::vector<int>(sol.begin(), sol.begin() + n));
            Pattern b(window, std::vector<int>(sol.begin() + n, sol.end()));
            if (sh.kind == Shift::Sofic) {
                a = apply_code(sh.code, a);
                b = apply_code(sh.code, b);
            }
            w.left_open = std::move(a);
            w.right_open = std::move(b);
            w.certifying = false;  // window pair only
        }
        if (!validate_witness(sh, w)) throw spec_error("exchangeable: unsound witness");
        w.differing_cells = witness_differing_cells(w);
        res.verdict = Classification::Exchangeable;
        res.witness = std::move(w);
        return res;
    }
    res.verdict = Classification::NoWitnessUpTo;
    res.exhausted = (st == SearchStatus::Unsat);
    return res;
}

// ---- exchangeability graph ----------------------------------------------------

struct ExchangeabilityGraph {
    Support F;
    std::vector<Pattern> vertices;  // canonical order
    struct Edge {
        int a, b;
        Witness witness;
    };
    std::vector<Edge> edges;
    struct CrossPair {
        int a, b;
        Obstruction obstruction;
    };
    std::vector<CrossPair> obstructed;
    std::vector<std::pair<int, int>> unknown;  // classified but neither witness nor obstruction
    ExchangeabilityParams params;
    bool vertices_capped = false;
    bool pairs_sampled = false;
    uint64_t pairs_classified = 0;

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(vertices.size());
        for (const auto& e : edges) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
        return adj;
    }
    // Connected components over witness edges.
    std::vector<int> components() const {
        std::vector<int> comp(vertices.size(), -1);
        auto adj = adjacency();
        int nc = 0;
        for (size_t s = 0; s < vertices.size(); ++s) {
            if (comp[s] >= 0) continue;
            comp[s] = nc;
            std::queue<int> bfs;
            bfs.push(static_cast<int>(s));
            while (!bfs.empty()) {
                int v = bfs.front();
                bfs.pop();
                for (int u : adj[v])
                    if (comp[u] < 0) {
                        comp[u] = nc;
                        bfs.push(u);
                    }
            }
            ++nc;
        }
        return comp;
    }
    int vertex_of(const Pattern& p) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), p);
        if (it == vertices.end() || !(*it == p)) return -1;
        return static_cast<int>(it - vertices.begin());
    }
};

// Pairwise classification over the enumerated language. `pair_limit` bounds
// the number of classified pairs; pairs are processed in canonical order, or
// seed-sampled when the full pair set exceeds the limit. Rows of `focus`
// patterns (when present among the vertices) are always classified first, so
// separation questions about specific patterns stay decided under sampling.
inline ExchangeabilityGraph exchangeability_graph(const Shift& sh, const Support& F,
                                                  const ExchangeabilityParams& params,
                                                  uint64_t vertex_cap = 4096,
                                                  uint64_t pair_limit = 1u << 20,
                                                  const std::vector<Pattern>& focus = {},
                                                  const std::vector<Pattern>& extra_vertices = {}) {
    ExchangeabilityGraph g;
    g.F = F;
    g.params = params;
    auto lang = shift_enumerate(sh, F, params.margin, params.budget, vertex_cap);
    g.vertices = lang.patterns;
    g.vertices_capped = lang.capped;
    // Explicitly supplied valid patterns join the capped enumeration (the
    // cap keeps lexicographically early patterns; probes of interest may lie
    // beyond it).
    for (const auto& p : extra_vertices) {
        if (!(p.support == F) || !shift_validate(sh, p)) continue;
        g.vertices.push_back(p);
    }
    std::sort(g.vertices.begin(), g.vertices.end());
    g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
    size_t n = g.vertices.size();
    uint64_t total_pairs = n * (n - 1) / 2;
    std::set<std::pair<int, int>> seen;
    auto classify_pair = [&](int i, int j) {
        if (i == j) return;
        if (i > j) std::swap(i, j);
        if (!seen.insert({i, j}).second) return;
        auto c = exchangeable(sh, g.vertices[i], g.vertices[j], params);
        ++g.pairs_classified;
        if (c.verdict == Classification::Exchangeable)
            g.edges.push_back({i, j, *c.witness});
        else if (c.verdict == Classification::Obstructed)
            g.obstructed.push_back({i, j, *c.obstruction});
        else
            g.unknown.emplace_back(i, j);
    };
    for (const auto& f : focus) {
        int v = g.vertex_of(f);
        if (v < 0) continue;
        for (size_t j = 0; j < n; ++j) classify_pair(v, static_cast<int>(j));
    }
    if (total_pairs <= pair_limit) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                classify_pair(static_cast<int>(i), static_cast<int>(j));
    } else {
        g.pairs_sampled = true;
        std::mt19937_64 rng(params.budget.seed + 0x9e3779b97f4a7c15ull);
        uint64_t budgeted = pair_limit;
        uint64_t attempts = 0;
        while (g.pairs_classified < budgeted && attempts < 64 * budgeted) {
            ++attempts;
            int i = static_cast<int>(rng() % n);
            int j = static_cast<int>(rng() % n);
            if (i == j) continue;
            classify_pair(i, j);
        }
    }
    return g;
}

// Exact BFS distance over witness edges; -1 when unreachable.
inline int chain_distance(const ExchangeabilityGraph& g, const Pattern& p, const Pattern& q) {
    int a = g.vertex_of(p), b = g.vertex_of(q);
    if (a < 0 || b < 0) throw spec_error("chain_distance: VertexNotFound");
    if (a == b) return 0;
    auto adj = g.adjacency();
    std::vector<int> dist(g.vertices.size(), -1);
    dist[a] = 0;
    std::queue<int> bfs;
    bfs.push(a);
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int u : adj[v])
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                if (u == b) return dist[u];
                bfs.push(u);
            }
    }
    return -1;
}

// ---- BCE profile ---------------------------------------------------------------

struct BceRecord {
    Support support;
    size_t vertex_count = 0;
    int component_count = 0;
    int max_diameter = 0;  // max BFS eccentricity within a component
    bool capped = false;
    bool pairs_sampled = false;
};

struct BceProfile {
    std::vector<BceRecord> records;
    ExchangeabilityParams params;
};

// Per-support component counts and diameters. Growing within-component
// diameters across supports is evidence against bounded chain
// exchangeability; a uniform bound is evidence for it.
inline BceProfile bce_profile(const Shift& sh, const std::vector<Support>& supports,
                              const ExchangeabilityParams& params, uint64_t vertex_cap = 512,
                              uint64_t pair_limit = 1u << 18) {
    BceProfile prof;
    prof.params = params;
    for (const auto& F : supports) {
        auto g = exchangeability_graph(sh, F, params, vertex_cap, pair_limit);
        BceRecord rec;
        rec.support = F;
        rec.vertex_count = g.vertices.size();
        rec.capped = g.vertices_capped;
        rec.pairs_sampled = g.pairs_sampled;
        auto comp = g.components();
        rec.component_count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
        auto adj = g.adjacency();
        for (size_t s = 0; s < g.vertices.size(); ++s) {
            std::vector<int> dist(g.vertices.size(), -1);
            dist[s] = 0;
            std::queue<int> bfs;
            bfs.push(static_cast<int>(s));
            while (!bfs.empty()) {
                int v = bfs.front();
                bfs.pop();
                for (int u : adj[v])
                    if (dist[u] < 0) {
                        dist[u] = dist[v] + 1;
                        rec.max_diameter = std::max(rec.max_diameter, dist[u]);
                        bfs.push(u);
                    }
            }
        }
        prof.records.push_back(std::move(rec));
    }
    return prof;
}

}  // namespace sft
