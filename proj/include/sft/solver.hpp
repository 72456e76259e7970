#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <unordered_map>

#include "sft/shift_spec.hpp"

namespace sft {

using BigInt = boost::multiprecision::cpp_int;

struct SearchBudget {
    uint64_t max_nodes = 20'000'000;
    uint64_t max_millis = 120'000;
    uint64_t seed = 0;
};

enum class SearchStatus { Sat, Unsat, Budget };

struct SearchStats {
    uint64_t nodes = 0;
    uint64_t propagations = 0;
    uint64_t solutions = 0;
    bool exhausted = false;  // search space fully explored
};

// Symbol-to-symbol compatibility table for one directed variable pair.
// fwd[s] = symbols allowed at the second cell when the first holds s;
// bwd[t] = symbols allowed at the first cell when the second holds t.
struct PairTable {
    std::vector<SymbolSet> fwd, bwd;
    explicit PairTable(int nsym) : fwd(nsym, SymbolSet::all(nsym)), bwd(nsym, SymbolSet::all(nsym)) {}
    void forbid(const SymbolSet& a, const SymbolSet& b) {
        for (int s = a.first(); s >= 0; s = a.next(s)) fwd[s] &= ~b;
        for (int t = b.first(); t >= 0; t = b.next(t)) bwd[t] &= ~a;
    }
};

// Finite CSP instance: variables carry symbol domains; constraints are pair
// arcs (compiled 2-cell families and link relations) plus generic product
// families of arity >= 3. Variables live on one or two layers over the same
// cell geometry, which is either a finite support or a torus.
class Csp {
public:
    int nsym = 0;
    int dim = 1;
    bool torus = false;
    Coord periods{1, 1, 1};
    std::vector<Coord> cells;  // canonical order, shared by all layers
    int layers = 1;

    std::vector<SymbolSet> dom0;  // initial domains, one per variable

    struct Arc {
        int from, to;
        const PairTable* table;
        bool forward;  // use table->fwd if true else table->bwd
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> arcs_of;  // per variable: outgoing arc ids

    struct Placement {
        const Rule* rule;
        std::vector<int> vars;
    };
    std::vector<Placement> placements;
    std::vector<std::vector<int>> placements_of;

    static Csp on_support(const ShiftSpec& spec, const Support& region, int layers = 1) {
        Csp c;
        c.init_geometry(spec, region.cells, false, Coord{}, layers);
        for (int l = 0; l < layers; ++l) c.add_spec_rules(spec, l);
        return c;
    }
    static Csp on_torus(const ShiftSpec& spec, Coord periods, int layers = 1) {
        for (int i = 0; i < spec.dim; ++i)
            if (periods[i] <= 2 * spec.radius[i])
                throw spec_error(spec.name + ": torus periods must exceed 2*rule_radius");
        std::vector<Coord> cs;
        int p1 = spec.dim > 1 ? periods[1] : 1, p2 = spec.dim > 2 ? periods[2] : 1;
        for (int x = 0; x < periods[0]; ++x)
            for (int y = 0; y < p1; ++y)
                for (int z = 0; z < p2; ++z) cs.push_back(Coord{x, y, z});
        Csp c;
        c.init_geometry(spec, cs, true, periods, layers);
        for (int l = 0; l < layers; ++l) c.add_spec_rules(spec, l);
        return c;
    }

    int ncells() const { return static_cast<int>(cells.size()); }
    int nvars() const { return ncells() * layers; }

    // Variable id for a coordinate on a layer; -1 if outside the region.
    int var_at(int layer, Coord c) const {
        if (torus) {
            for (int i = 0; i < dim; ++i) c[i] = ((c[i] % periods[i]) + periods[i]) % periods[i];
        }
        auto it = index_.find(c);
        if (it == index_.end()) return -1;
        return layer * ncells() + it->second;
    }

    void restrict_var(int var, const SymbolSet& allowed) { dom0[var] &= allowed; }
    void pin(int var, int s) { dom0[var] &= SymbolSet::single(s); }
    void pin_pattern(int layer, const Pattern& p) {
        for (size_t i = 0; i < p.size(); ++i) {
            int v = var_at(layer, p.support.cells[i]);
            if (v < 0) throw spec_error("pin_pattern: cell outside region");
            pin(v, p.sym[i]);
        }
    }

    // Link two variables with a relation table (equality, same-code, ...).
    void link(int va, int vb, const PairTable* t) {
        add_arc(va, vb, t, true);
        add_arc(vb, va, t, false);
    }

    const PairTable* equality_table() {
        if (!eq_table_) {
            eq_table_ = std::make_unique<PairTable>(nsym);
            for (int s = 0; s < nsym; ++s) {
                eq_table_->fwd[s] = SymbolSet::single(s);
                eq_table_->bwd[s] = SymbolSet::single(s);
            }
        }
        return eq_table_.get();
    }
    // Relation "code(a) == code(b)" for a symbol->class map.
    const PairTable* same_class_table(const std::vector<int>& cls) {
        auto t = std::make_unique<PairTable>(nsym);
        std::map<int, SymbolSet> groups;
        for (int s = 0; s < nsym; ++s) groups[cls[s]].set(s);
        for (int s = 0; s < nsym; ++s) {
            t->fwd[s] = groups[cls[s]];
            t->bwd[s] = groups[cls[s]];
        }
        owned_tables_.push_back(std::move(t));
        return owned_tables_.back().get();
    }

private:
    std::unordered_map<Coord, int, CoordHash> index_;
    std::deque<std::unique_ptr<PairTable>> owned_tables_;
    std::unique_ptr<PairTable> eq_table_;
    // Per (spec-rule-set signature) cache of delta tables built from 2-cell rules.
    std::map<std::pair<const void*, Coord>, std::unique_ptr<PairTable>> delta_tables_;

    void init_geometry(const ShiftSpec& spec, std::vector<Coord> cs, bool wrap, Coord per,
                       int nlayers) {
        if (!spec.compiled) throw spec_error(spec.name + ": CSP over uncompiled spec");
        nsym = spec.nsym();
        dim = spec.dim;
        torus = wrap;
        periods = per;
        cells = std::move(cs);
        layers = nlayers;
        for (int i = 0; i < ncells(); ++i) index_[cells[i]] = i;
        dom0.assign(nvars(), SymbolSet::all(nsym));
        arcs_of.assign(nvars(), {});
        placements_of.assign(nvars(), {});
    }

    void add_arc(int from, int to, const PairTable* t, bool forward) {
        arcs.push_back(Arc{from, to, t, forward});
        arcs_of[from].push_back(static_cast<int>(arcs.size()) - 1);
    }

    void add_spec_rules(const ShiftSpec& spec, int layer) {
        // Group 2-cell rules by normalized offset; larger rules stay generic.
        std::map<Coord, std::vector<const Rule*>> by_delta;
        std::vector<const Rule*> generic;
        for (const auto& r : spec.rules) {
            if (r.arity() == 1) {
                // Unary family: remove from every domain.
                for (int i = 0; i < ncells(); ++i) {
                    int v = var_at(layer, cells[i] + Coord{});
                    if (v >= 0) dom0[v] &= ~r.in[0];
                }
            } else if (r.arity() == 2) {
                by_delta[r.at[1] - r.at[0]].push_back(&r);
            } else {
                generic.push_back(&r);
            }
        }
        for (const auto& [delta, rules] : by_delta) {
            auto key = std::make_pair(static_cast<const void*>(&spec), delta);
            auto it = delta_tables_.find(key);
            if (it == delta_tables_.end()) {
                auto t = std::make_unique<PairTable>(nsym);
                for (const Rule* r : rules) t->forbid(r->in[0], r->in[1]);
                it = delta_tables_.emplace(key, std::move(t)).first;
            }
            const PairTable* t = it->second.get();
            for (int i = 0; i < ncells(); ++i) {
                int va = layer * ncells() + i;
                int vb = var_at(layer, cells[i] + delta);
                if (vb < 0) continue;
                link_oriented(va, vb, t);
            }
        }
        for (const Rule* r : generic) {
            for (int i = 0; i < ncells(); ++i) {
                Coord anchor = cells[i] - r->at[0];
                std::vector<int> vars;
                bool ok = true;
                for (const auto& off : r->at) {
                    int v = var_at(layer, anchor + off);
                    if (v < 0) {
                        ok = false;
                        break;
                    }
                    vars.push_back(v);
                }
                if (!ok) continue;
                // Anchor at cells[i] == position of at[0]; avoid duplicates by
                // only anchoring from at[0].
                if (vars[0] != layer * ncells() + i) continue;
                placements.push_back(Placement{r, vars});
                int pid = static_cast<int>(placements.size()) - 1;
                for (int v : vars) placements_of[v].push_back(pid);
            }
        }
    }

    void link_oriented(int va, int vb, const PairTable* t) {
        add_arc(va, vb, t, true);
        add_arc(vb, va, t, false);
    }
};

// Complete backtracking search with arc-consistency propagation. Cell order
// is fail-first (most-constrained, ties by lowest variable index), value
// order is ascending symbol index; fully deterministic.
class Solver {
public:
    Solver(const Csp& csp, const SearchBudget& budget) : csp_(csp), budget_(budget) {}

    // Optional seeded value-order shuffle (used for pattern sampling); search
    // stays complete and deterministic for a fixed seed.
    void set_shuffle(std::mt19937_64* rng) { shuffle_ = rng; }
    // Optional value tried first at every branch (a good "filler" symbol
    // speeds up completion searches without affecting completeness).
    void set_preferred_value(int s) { preferred_ = s; }

    SearchStatus solve(std::vector<int>* out, SearchStats& stats) {
        start_ = std::chrono::steady_clock::now();
        stats_ = SearchStats{};
        auto dom = csp_.dom0;
        SearchStatus st;
        if (!propagate_all(dom)) {
            st = SearchStatus::Unsat;
        } else {
            st = search(dom, out);
        }
        if (st == SearchStatus::Unsat) stats_.exhausted = true;
        stats = stats_;
        return st;
    }

    // Pre-propagated base domains for repeated solves that differ only in a
    // few pins (mass pattern checks reuse the shared propagation work).
    std::optional<std::vector<SymbolSet>> propagated_base() {
        auto dom = csp_.dom0;
        start_ = std::chrono::steady_clock::now();
        stats_ = SearchStats{};
        if (!propagate_all(dom)) return std::nullopt;
        return dom;
    }
    // Solve from explicit domains; `dirty` lists the variables whose domains
    // were narrowed relative to the state the base was propagated at.
    SearchStatus solve_with(std::vector<SymbolSet> dom, std::vector<int> dirty,
                            std::vector<int>* out, SearchStats& stats) {
        start_ = std::chrono::steady_clock::now();
        stats_ = SearchStats{};
        SearchStatus st;
        for (int v : dirty)
            if (dom[v].none()) {
                stats_.exhausted = true;
                stats = stats_;
                return SearchStatus::Unsat;
            }
        if (!propagate(dom, std::move(dirty))) {
            st = SearchStatus::Unsat;
        } else {
            st = search(dom, out);
        }
        if (st == SearchStatus::Unsat) stats_.exhausted = true;
        stats = stats_;
        return st;
    }

    // Enumerate completable assignments of `outputs` (given in the order they
    // should be assigned, which callers choose canonically). The callback
    // returns false to stop early. cap limits emitted solutions.
    SearchStatus enumerate(const std::vector<int>& outputs, uint64_t cap,
                           const std::function<bool(const std::vector<int>&)>& emit,
                           SearchStats& stats) {
        start_ = std::chrono::steady_clock::now();
        stats_ = SearchStats{};
        auto dom = csp_.dom0;
        SearchStatus st;
        if (!propagate_all(dom)) {
            st = SearchStatus::Unsat;
            stats_.exhausted = true;
        } else {
            stopped_ = false;
            capped_ = false;
            st = enum_rec(dom, outputs, 0, cap, emit);
            if (st != SearchStatus::Budget && !stopped_ && !capped_) stats_.exhausted = true;
            if (st != SearchStatus::Budget) st = SearchStatus::Sat;
        }
        stats = stats_;
        return st;
    }
    bool capped() const { return capped_; }

private:
    const Csp& csp_;
    SearchBudget budget_;
    SearchStats stats_;
    std::chrono::steady_clock::time_point start_;
    bool stopped_ = false, capped_ = false;
    std::mt19937_64* shuffle_ = nullptr;
    int preferred_ = -1;

    bool budget_ok() {
        if (stats_.nodes > budget_.max_nodes) return false;
        if ((stats_.nodes & 0xFF) == 0) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
            if (static_cast<uint64_t>(ms) > budget_.max_millis) return false;
        }
        return true;
    }

    bool revise_arc(std::vector<SymbolSet>& dom, const Csp::Arc& a, std::vector<int>& dirty) {
        const auto& tab = a.forward ? a.table->fwd : a.table->bwd;
        SymbolSet allowed;
        const SymbolSet& src = dom[a.from];
        for (int s = src.first(); s >= 0; s = src.next(s)) allowed |= tab[s];
        SymbolSet nd = dom[a.to] & allowed;
        ++stats_.propagations;
        if (nd == dom[a.to]) return true;
        dom[a.to] = nd;
        if (nd.none()) return false;
        dirty.push_back(a.to);
        return true;
    }

    bool revise_placement(std::vector<SymbolSet>& dom, const Csp::Placement& p,
                          std::vector<int>& dirty) {
        ++stats_.propagations;
        int uncommitted = -1;
        for (size_t i = 0; i < p.vars.size(); ++i) {
            if (!dom[p.vars[i]].subset_of(p.rule->in[i])) {
                if (!dom[p.vars[i]].intersects(p.rule->in[i])) return true;  // can't fire
                if (uncommitted >= 0) return true;  // two free cells: nothing to prune yet
                uncommitted = static_cast<int>(i);
            }
        }
        if (uncommitted < 0) return false;  // all committed: family violated
        int v = p.vars[uncommitted];
        SymbolSet nd = dom[v] & ~p.rule->in[uncommitted];
        if (nd == dom[v]) return true;
        dom[v] = nd;
        if (nd.none()) return false;
        dirty.push_back(v);
        return true;
    }

    bool propagate(std::vector<SymbolSet>& dom, std::vector<int> dirty) {
        while (!dirty.empty()) {
            int v = dirty.back();
            dirty.pop_back();
            for (int aid : csp_.arcs_of[v])
                if (!revise_arc(dom, csp_.arcs[aid], dirty)) return false;
            for (int pid : csp_.placements_of[v])
                if (!revise_placement(dom, csp_.placements[pid], dirty)) return false;
        }
        return true;
    }

    bool propagate_all(std::vector<SymbolSet>& dom) {
        for (auto& d : dom)
            if (d.none()) return false;
        std::vector<int> dirty(csp_.nvars());
        for (int i = 0; i < csp_.nvars(); ++i) dirty[i] = i;
        return propagate(dom, std::move(dirty));
    }

    int pick_cell(const std::vector<SymbolSet>& dom) const {
        int best = -1, best_size = SymbolSet::kMax + 1;
        for (int v = 0; v < csp_.nvars(); ++v) {
            int c = dom[v].count();
            if (c > 1 && c < best_size) {
                best = v;
                best_size = c;
                if (c == 2) break;
            }
        }
        return best;
    }

    SearchStatus search(std::vector<SymbolSet>& dom, std::vector<int>* out) {
        int v = pick_cell(dom);
        if (v < 0) {
            if (out) {
                out->resize(csp_.nvars());
                for (int i = 0; i < csp_.nvars(); ++i) (*out)[i] = dom[i].first();
            }
            return SearchStatus::Sat;
        }
        std::vector<int> order;
        if (preferred_ >= 0 && dom[v].test(preferred_)) order.push_back(preferred_);
        for (int s = dom[v].first(); s >= 0; s = dom[v].next(s))
            if (s != preferred_) order.push_back(s);
        if (shuffle_)
            for (size_t i = order.size(); i > 1; --i)
                std::swap(order[i - 1], order[(*shuffle_)() % i]);
        for (int s : order) {
            ++stats_.nodes;
            if (!budget_ok()) return SearchStatus::Budget;
            auto saved = dom;
            dom[v] = SymbolSet::single(s);
            if (propagate(dom, {v})) {
                SearchStatus st = search(dom, out);
                if (st == SearchStatus::Sat) return st;
                if (st == SearchStatus::Budget) return st;
            }
            dom = std::move(saved);
        }
        return SearchStatus::Unsat;
    }

    // Satisfiability probe on the residual domains.
    bool probe(std::vector<SymbolSet> dom, SearchStatus& st) {
        st = search(dom, nullptr);
        return st == SearchStatus::Sat;
    }

    SearchStatus enum_rec(std::vector<SymbolSet>& dom, const std::vector<int>& outputs,
                          size_t next, uint64_t cap,
                          const std::function<bool(const std::vector<int>&)>& emit) {
        if (stopped_ || capped_) return SearchStatus::Sat;
        // Find next undecided output variable.
        while (next < outputs.size() && dom[outputs[next]].count() == 1) ++next;
        if (next == outputs.size()) {
            SearchStatus st;
            if (!probe(dom, st)) {
                if (st == SearchStatus::Budget) return st;
                return SearchStatus::Unsat;  // this leaf refuted; caller continues
            }
            ++stats_.solutions;
            if (stats_.solutions > cap) {
                capped_ = true;
                return SearchStatus::Sat;
            }
            std::vector<int> vals(outputs.size());
            for (size_t i = 0; i < outputs.size(); ++i) vals[i] = dom[outputs[i]].first();
            if (!emit(vals)) stopped_ = true;
            return SearchStatus::Sat;
        }
        int v = outputs[next];
        bool budget_hit = false;
        for (int s = dom[v].first(); s >= 0; s = dom[v].next(s)) {
            ++stats_.nodes;
            if (!budget_ok()) return SearchStatus::Budget;
            auto saved = dom;
            dom[v] = SymbolSet::single(s);
            if (propagate(dom, {v})) {
                SearchStatus st = enum_rec(dom, outputs, next + 1, cap, emit);
                if (st == SearchStatus::Budget) budget_hit = true;
                if (stopped_ || capped_) {
                    dom = std::move(saved);
                    return SearchStatus::Sat;
                }
            }
            dom = std::move(saved);
            if (budget_hit) return SearchStatus::Budget;
        }
        return SearchStatus::Sat;
    }
};

// ---- High-level SFT operations ---------------------------------------------

enum class SolveOutcome { Found, Refuted, BudgetExhausted };

struct ExtendResult {
    SolveOutcome outcome;
    Pattern pattern;  // valid when outcome == Found
    SearchStats stats;
};

// Locally valid extension of p to `target`; Refuted only on exhaustive
// refutation of the whole space.
inline ExtendResult extend(const ShiftSpec& spec, const Pattern& p, const Support& target,
                           const SearchBudget& budget) {
    if (!p.support.subset_of(target)) throw spec_error("extend: pattern support not in target");
    if (!validate_pattern(spec, p)) throw spec_error("extend: InvalidInput, pattern violates spec");
    Csp csp = Csp::on_support(spec, target);
    csp.pin_pattern(0, p);
    Solver solver(csp, budget);
    std::vector<int> sol;
    SearchStats stats;
    SearchStatus st = solver.solve(&sol, stats);
    ExtendResult r{SolveOutcome::BudgetExhausted, {}, stats};
    if (st == SearchStatus::Sat) {
        r.outcome = SolveOutcome::Found;
        r.pattern = Pattern(target, sol);
        if (!validate_pattern(spec, r.pattern)) throw spec_error("extend: unsound solver result");
    } else if (st == SearchStatus::Unsat) {
        r.outcome = SolveOutcome::Refuted;
    }
    return r;
}

struct EnumerateResult {
    std::vector<Pattern> patterns;  // canonically sorted
    bool capped = false;
    bool exhausted = false;  // complete enumeration (no budget or cap cut)
    int margin = 0;
    SearchStats stats;
};

// The m-extendable language L_F^m: all patterns on F extending to a locally
// valid pattern on F dilated by m. Superset of L_F(X), antitone in m.
inline EnumerateResult enumerate_language(const ShiftSpec& spec, const Support& F, int m,
                                          const SearchBudget& budget, uint64_t cap) {
    Support region = dilate(F, spec.dim, m);
    Csp csp = Csp::on_support(spec, region);
    std::vector<int> outputs;
    for (const auto& c : F.cells) outputs.push_back(csp.var_at(0, c));
    Solver solver(csp, budget);
    EnumerateResult res;
    res.margin = m;
    SearchStatus st = solver.enumerate(
        outputs, cap,
        [&](const std::vector<int>& vals) {
            res.patterns.emplace_back(F, vals);
            return true;
        },
        res.stats);
    res.capped = solver.capped();
    res.exhausted = res.stats.exhausted && st != SearchStatus::Budget;
    return res;
}

struct CountResult {
    BigInt count = 0;
    bool exact = false;  // complete search; otherwise a lower bound
    int margin = 0;
    SearchStats stats;
};

inline CountResult count_language(const ShiftSpec& spec, const Support& F, int m,
                                  const SearchBudget& budget) {
    CountResult res;
    res.margin = m;
    if (spec.rules.empty()) {
        // Rule-free shift: every assignment is valid.
        res.count = boost::multiprecision::pow(BigInt(spec.nsym()), static_cast<unsigned>(F.size()));
        res.exact = true;
        return res;
    }
    Support region = dilate(F, spec.dim, m);
    Csp csp = Csp::on_support(spec, region);
    std::vector<int> outputs;
    for (const auto& c : F.cells) outputs.push_back(csp.var_at(0, c));
    Solver solver(csp, budget);
    SearchStatus st = solver.enumerate(
        outputs, UINT64_MAX, [&](const std::vector<int>&) { return true; }, res.stats);
    res.count = res.stats.solutions;
    res.exact = res.stats.exhausted && st != SearchStatus::Budget;
    return res;
}

struct TorusResult {
    SolveOutcome outcome;
    TorusConfig torus;
    SearchStats stats;
};

// Validity of a small-period configuration: unroll to a torus whose periods
// exceed twice the rule radius and validate there.
inline bool validate_wrapped(const ShiftSpec& spec, const TorusConfig& t) {
    Coord up = t.periods;
    for (int i = 0; i < spec.dim; ++i)
        while (up[i] <= 2 * spec.radius[i]) up[i] += t.periods[i];
    TorusConfig big;
    big.dim = t.dim;
    big.periods = up;
    big.data.resize(big.cells());
    for (int x = 0; x < up[0]; ++x)
        for (int y = 0; y < (t.dim > 1 ? up[1] : 1); ++y)
            for (int z = 0; z < (t.dim > 2 ? up[2] : 1); ++z)
                big.set(Coord{x, y, z}, t.at(Coord{x, y, z}));
    return validate_torus(spec, big);
}

// Strongly periodic completion: a valid torus agreeing with p (cells taken
// modulo periods). Refuted only on exhaustive refutation. Periods at or
// below twice the rule radius fall back to brute force over the fundamental
// domain with unrolled validation.
inline TorusResult complete_torus(const ShiftSpec& spec, const Pattern& p, Coord periods,
                                  const SearchBudget& budget) {
    for (int i = spec.dim; i < 3; ++i) periods[i] = 1;
    if (!validate_pattern(spec, p))
        throw spec_error("complete_torus: InvalidInput, pattern violates spec");
    bool small = false;
    for (int i = 0; i < spec.dim; ++i) small |= periods[i] <= 2 * spec.radius[i];
    if (small) {
        TorusConfig t;
        t.dim = spec.dim;
        t.periods = periods;
        int cells = t.cells();
        if (std::pow(double(spec.nsym()), double(cells)) > double(1 << 22))
            throw spec_error("complete_torus: fundamental domain too large for small periods");
        t.data.assign(cells, 0);
        TorusResult r{SolveOutcome::Refuted, {}, {}};
        while (true) {
            bool agrees = true;
            for (size_t i = 0; i < p.size() && agrees; ++i)
                agrees = t.at(p.support.cells[i]) == p.sym[i];
            if (agrees && validate_wrapped(spec, t)) {
                r.outcome = SolveOutcome::Found;
                r.torus = t;
                return r;
            }
            size_t i = 0;
            for (; i < t.data.size(); ++i) {
                if (++t.data[i] < spec.nsym()) break;
                t.data[i] = 0;
            }
            if (i == t.data.size()) break;
        }
        return r;
    }
    Csp csp = Csp::on_torus(spec, periods);
    // Injectivity of cell -> wrapped cell over the support.
    {
        std::map<int, Coord> seen;
        TorusConfig probe;
        probe.dim = spec.dim;
        probe.periods = periods;
        probe.data.assign(1, 0);
        for (const auto& c : p.support.cells) {
            int w = 0;
            {
                TorusConfig t;
                t.dim = spec.dim;
                t.periods = periods;
                w = t.wrap_index(c);
            }
            auto it = seen.find(w);
            if (it != seen.end() && !(it->second == c))
                throw spec_error("complete_torus: support does not fit fundamental domain");
            seen[w] = c;
        }
    }
    csp.pin_pattern(0, p);
    Solver solver(csp, budget);
    std::vector<int> sol;
    SearchStats stats;
    SearchStatus st = solver.solve(&sol, stats);
    TorusResult r{SolveOutcome::BudgetExhausted, {}, stats};
    if (st == SearchStatus::Sat) {
        r.outcome = SolveOutcome::Found;
        r.torus.dim = spec.dim;
        r.torus.periods = periods;
        r.torus.data = sol;
        if (!validate_torus(spec, r.torus)) throw spec_error("complete_torus: unsound result");
    } else if (st == SearchStatus::Unsat) {
        r.outcome = SolveOutcome::Refuted;
    }
    return r;
}

struct JointResult {
    SolveOutcome outcome;
    Pattern left, right;
    SearchStats stats;
};

// Two locally valid patterns on `target` restricting to p and q on F and
// equal outside K (the equality region is target minus K).
inline JointResult joint_extend(const ShiftSpec& spec, const Pattern& p, const Pattern& q,
                                const Support& K, const Support& target,
                                const SearchBudget& budget) {
    if (!(p.support == q.support)) throw spec_error("joint_extend: supports differ");
    if (!validate_pattern(spec, p) || !validate_pattern(spec, q))
        throw spec_error("joint_extend: InvalidInput");
    Csp csp = Csp::on_support(spec, target, 2);
    csp.pin_pattern(0, p);
    csp.pin_pattern(1, q);
    const PairTable* eq = csp.equality_table();
    for (const auto& c : target.cells) {
        if (K.contains(c)) continue;
        csp.link(csp.var_at(0, c), csp.var_at(1, c), eq);
    }
    Solver solver(csp, budget);
    std::vector<int> sol;
    SearchStats stats;
    SearchStatus st = solver.solve(&sol, stats);
    JointResult r{SolveOutcome::BudgetExhausted, {}, {}, stats};
    if (st == SearchStatus::Sat) {
        int n = csp.ncells();
        r.outcome = SolveOutcome::Found;
        r.left = Pattern(target, std::vector<int>(sol.begin(), sol.begin() + n));
        r.right = Pattern(target, std::vector<int>(sol.begin() + n, sol.end()));
        if (!validate_pattern(spec, r.left) || !validate_pattern(spec, r.right))
            throw spec_error("joint_extend: unsound result");
    } else if (st == SearchStatus::Unsat) {
        r.outcome = SolveOutcome::Refuted;
    }
    return r;
}

}  // namespace sft
