#pragma once

#include <functional>

#include "sft/solver.hpp"

namespace sft {

// Sliding-block code: local rule over a finite neighborhood, applied at every
// cell whose translated neighborhood fits in the input support.
struct BlockCode {
    Support neighborhood;                      // offsets, canonical order
    std::function<int(const std::vector<int>&)> rule;  // symbols in neighborhood order -> output
    Alphabet source, target;

    // Single-cell recoding given by a symbol map.
    static BlockCode cellwise(Alphabet src, Alphabet tgt, std::vector<int> map) {
        BlockCode c;
        c.neighborhood = Support{{Coord{}}};
        c.source = std::move(src);
        c.target = std::move(tgt);
        c.rule = [map](const std::vector<int>& v) { return map[v[0]]; };
        return c;
    }
    bool cellwise_map(std::vector<int>& out) const {
        if (neighborhood.size() != 1 || !(neighborhood.cells[0] == Coord{})) return false;
        out.resize(source.size());
        for (int s = 0; s < source.size(); ++s) out[s] = rule({s});
        return true;
    }
};

// Factor-map application; output lives on the eroded support.
inline Pattern apply_code(const BlockCode& code, const Pattern& p) {
    std::vector<Coord> out_cells;
    for (const auto& c : p.support.cells) {
        bool fits = true;
        for (const auto& off : code.neighborhood.cells)
            if (!p.support.contains(c + off)) {
                fits = false;
                break;
            }
        if (fits) out_cells.push_back(c);
    }
    if (out_cells.empty()) throw spec_error("apply_code: SupportTooSmall");
    Support out_support{out_cells};
    std::vector<int> out_sym;
    out_sym.reserve(out_support.size());
    std::vector<int> window(code.neighborhood.size());
    for (const auto& c : out_support.cells) {
        for (size_t i = 0; i < code.neighborhood.size(); ++i)
            window[i] = p.at(c + code.neighborhood.cells[i]);
        out_sym.push_back(code.rule(window));
    }
    return Pattern(out_support, std::move(out_sym));
}

inline TorusConfig apply_code(const BlockCode& code, const TorusConfig& t) {
    TorusConfig out;
    out.dim = t.dim;
    out.periods = t.periods;
    out.data.resize(t.data.size());
    std::vector<Coord> domain;
    for (int x = 0; x < t.periods[0]; ++x)
        for (int y = 0; y < (t.dim > 1 ? t.periods[1] : 1); ++y)
            for (int z = 0; z < (t.dim > 2 ? t.periods[2] : 1); ++z) domain.push_back(Coord{x, y, z});
    std::vector<int> window(code.neighborhood.size());
    for (const auto& c : domain) {
        for (size_t i = 0; i < code.neighborhood.size(); ++i)
            window[i] = t.at(c + code.neighborhood.cells[i]);
        out.set(c, code.rule(window));
    }
    return out;
}

// A shift space handle: an SFT given by its spec, a sofic shift given as a
// factor of an SFT cover, or a custom-validated shift (for shifts that are
// not of finite type, like sunny-side-up). All language operations accept
// any of the three.
struct Shift {
    enum Kind { SFT, Sofic, Custom } kind = SFT;
    ShiftSpec spec;  // SFT: the spec itself. Sofic: factor-alphabet spec (rule-free).
                     // Custom: alphabet carrier with `validator` naming the predicate.

    // Sofic parts.
    ShiftSpec cover;
    BlockCode code;

    // Custom parts. `valid` must be translation-invariant and
    // restriction-monotone; `torus_valid` decides validity of the periodic
    // configuration a torus represents.
    std::function<bool(const Pattern&)> valid;
    std::function<bool(const TorusConfig&)> torus_valid;

    static Shift sft(ShiftSpec s) {
        Shift sh;
        sh.kind = SFT;
        sh.spec = compiled(std::move(s));
        return sh;
    }
    static Shift sofic(std::string name, ShiftSpec cover_spec, BlockCode c) {
        Shift sh;
        sh.kind = Sofic;
        sh.cover = compiled(std::move(cover_spec));
        sh.code = std::move(c);
        sh.spec.name = std::move(name);
        sh.spec.dim = sh.cover.dim;
        sh.spec.radius = sh.cover.radius;
        sh.spec.alphabet = sh.code.target;
        sh.spec.compiled = true;
        return sh;
    }

    const std::string& name() const { return spec.name; }
    int dim() const { return spec.dim; }
    int nsym() const { return spec.alphabet.size(); }
};

inline bool shift_validate(const Shift& sh, const Pattern& p) {
    switch (sh.kind) {
        case Shift::SFT:
            return validate_pattern(sh.spec, p);
        case Shift::Custom:
            return sh.valid(p);
        case Shift::Sofic: {
            // Valid iff some locally valid lift exists on the same support.
            Csp csp = Csp::on_support(sh.cover, p.support);
            std::vector<int> cls;
            if (!sh.code.cellwise_map(cls)) throw spec_error("sofic validate: code not cellwise");
            for (size_t i = 0; i < p.size(); ++i) {
                SymbolSet pre;
                for (int s = 0; s < sh.cover.nsym(); ++s)
                    if (cls[s] == p.sym[i]) pre.set(s);
                csp.restrict_var(csp.var_at(0, p.support.cells[i]), pre);
            }
            Solver solver(csp, SearchBudget{});
            SearchStats st;
            return solver.solve(nullptr, st) == SearchStatus::Sat;
        }
    }
    return false;
}

inline bool shift_validate_torus(const Shift& sh, const TorusConfig& t) {
    switch (sh.kind) {
        case Shift::SFT:
            return validate_torus(sh.spec, t);
        case Shift::Custom:
            return sh.torus_valid(t);
        case Shift::Sofic: {
            Csp csp = Csp::on_torus(sh.cover, t.periods);
            std::vector<int> cls;
            sh.code.cellwise_map(cls);
            for (int i = 0; i < csp.ncells(); ++i) {
                SymbolSet pre;
                for (int s = 0; s < sh.cover.nsym(); ++s)
                    if (cls[s] == t.data[i]) pre.set(s);
                csp.restrict_var(i, pre);
            }
            Solver solver(csp, SearchBudget{});
            SearchStats st;
            return solver.solve(nullptr, st) == SearchStatus::Sat;
        }
    }
    return false;
}

// Brute-force enumeration with monotone-predicate pruning, for custom shifts.
inline EnumerateResult enumerate_custom(const Shift& sh, const Support& F, uint64_t cap) {
    EnumerateResult res;
    res.exhausted = true;
    std::vector<int> vals;
    std::vector<Coord> cells;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (res.capped) return;
        if (i == F.size()) {
            if (res.patterns.size() >= cap) {
                res.capped = true;
                return;
            }
            res.patterns.emplace_back(F, vals);
            return;
        }
        cells.push_back(F.cells[i]);
        for (int s = 0; s < sh.nsym(); ++s) {
            vals.push_back(s);
            if (sh.valid(Pattern(Support{cells}, vals))) rec(i + 1);
            vals.pop_back();
        }
        cells.pop_back();
    };
    rec(0);
    return res;
}

// Language enumeration for any shift kind. For SFTs this is the m-extendable
// language L_F^m; for sofic shifts the image of the cover's language; custom
// shifts enumerate by predicate.
inline EnumerateResult shift_enumerate(const Shift& sh, const Support& F, int m,
                                       const SearchBudget& budget, uint64_t cap) {
    switch (sh.kind) {
        case Shift::SFT:
            return enumerate_language(sh.spec, F, m, budget, cap);
        case Shift::Custom: {
            auto r = enumerate_custom(sh, F, cap);
            r.margin = m;
            return r;
        }
        case Shift::Sofic: {
            // Enumerate the cover on F with margin, project, dedupe.
            EnumerateResult covr = enumerate_language(sh.cover, F, m, budget, UINT64_MAX);
            EnumerateResult res;
            res.margin = m;
            res.stats = covr.stats;
            res.exhausted = covr.exhausted;
            std::vector<Pattern> imgs;
            imgs.reserve(covr.patterns.size());
            for (const auto& p : covr.patterns) imgs.push_back(apply_code(sh.code, p));
            std::sort(imgs.begin(), imgs.end());
            imgs.erase(std::unique(imgs.begin(), imgs.end()), imgs.end());
            if (imgs.size() > cap) {
                imgs.resize(cap);
                res.capped = true;
                res.exhausted = false;
            }
            res.patterns = std::move(imgs);
            return res;
        }
    }
    return {};
}

inline CountResult shift_count(const Shift& sh, const Support& F, int m,
                               const SearchBudget& budget) {
    if (sh.kind == Shift::SFT) return count_language(sh.spec, F, m, budget);
    CountResult res;
    res.margin = m;
    auto e = shift_enumerate(sh, F, m, budget, UINT64_MAX);
    res.count = e.patterns.size();
    res.exact = e.exhausted && !e.capped;
    return res;
}

inline TorusResult shift_complete_torus(const Shift& sh, const Pattern& p, Coord periods,
                                        const SearchBudget& budget) {
    switch (sh.kind) {
        case Shift::SFT:
            return complete_torus(sh.spec, p, periods, budget);
        case Shift::Sofic: {
            Csp csp = Csp::on_torus(sh.cover, periods);
            std::vector<int> cls;
            sh.code.cellwise_map(cls);
            for (size_t i = 0; i < p.size(); ++i) {
                SymbolSet pre;
                for (int s = 0; s < sh.cover.nsym(); ++s)
                    if (cls[s] == p.sym[i]) pre.set(s);
                csp.restrict_var(csp.var_at(0, p.support.cells[i]), pre);
            }
            Solver solver(csp, budget);
            std::vector<int> sol;
            SearchStats stats;
            SearchStatus st = solver.solve(&sol, stats);
            TorusResult r{SolveOutcome::BudgetExhausted, {}, stats};
            if (st == SearchStatus::Sat) {
                TorusConfig lift;
                lift.dim = sh.dim();
                lift.periods = periods;
                lift.data = sol;
                r.outcome = SolveOutcome::Found;
                r.torus = apply_code(sh.code, lift);
                if (!shift_validate_torus(sh, r.torus))
                    throw spec_error("sofic complete_torus: unsound result");
            } else if (st == SearchStatus::Unsat) {
                r.outcome = SolveOutcome::Refuted;
            }
            return r;
        }
        case Shift::Custom: {
            // No generic search for predicate shifts; try the uniform fills.
            TorusResult r{SolveOutcome::Refuted, {}, {}};
            for (int s = 0; s < sh.nsym(); ++s) {
                TorusConfig t;
                t.dim = sh.dim();
                t.periods = periods;
                for (int i = sh.dim(); i < 3; ++i) t.periods[i] = 1;
                t.data.assign(t.cells(), s);
                bool ok = true;
                for (size_t i = 0; i < p.size() && ok; ++i)
                    if (p.sym[i] != s) ok = false;
                if (ok && sh.torus_valid(t)) {
                    r.outcome = SolveOutcome::Found;
                    r.torus = t;
                    return r;
                }
            }
            return r;
        }
    }
    return {SolveOutcome::BudgetExhausted, {}, {}};
}

}  // namespace sft
