#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sft/pattern.hpp"

namespace sft {

// One forbidden family in product form: a placement at anchor g is violated
// when, for every i, the symbol at g + at[i] lies in in[i]. A concrete
// forbidden pattern is the special case where every in[i] is a singleton.
// The family denotes the finite set of concrete forbidden patterns obtained
// by expanding the product.
struct Rule {
    std::vector<Coord> at;
    std::vector<SymbolSet> in;
    std::string tag;  // provenance label for traces ("wang:x", "cube-gap", ...)

    size_t arity() const { return at.size(); }
};

// Subshift-of-finite-type specification over Z^dim. Local rules are stored
// two ways: `forbidden` holds concrete patterns (the file-format view), and
// `rules` holds the compiled product families the solver and validator use.
// compile() folds forbidden patterns and Wang face matching into `rules`
// exactly once.
struct ShiftSpec {
    std::string name;
    int dim = 1;
    Coord radius{1, 1, 1};  // per-axis rule radius; supports must fit in box_aniso(dim, radius)
    Alphabet alphabet;
    std::vector<Pattern> forbidden;      // concrete forbidden patterns
    std::vector<Rule> class_rules;       // product families stated at load time
    std::map<std::string, SymbolSet> sets;  // named symbol sets used by class rules
    bool wang_mode = false;
    std::string validator;  // name of a registered custom validator, or empty

    // Compiled state.
    bool compiled = false;
    std::vector<Rule> rules;

    int nsym() const { return alphabet.size(); }

    void check_radius(const Support& s, const std::string& what) const {
        Coord lo, hi;
        bounds(s, lo, hi);
        for (int i = 0; i < dim; ++i)
            if (hi[i] - lo[i] > 2 * radius[i])
                throw spec_error(name + ": " + what + " exceeds rule radius on axis " +
                                 std::to_string(i));
    }

    void add_forbidden(const Pattern& p) {
        check_radius(p.support, "forbidden pattern");
        forbidden.push_back(p);
        compiled = false;
    }
    void add_class_rule(Rule r) {
        Support s{r.at};
        check_radius(s, "forbidden family");
        // Complement-built sets carry bits past the alphabet; trim them.
        for (auto& in : r.in) in &= SymbolSet::all(alphabet.size());
        class_rules.push_back(std::move(r));
        compiled = false;
    }

    // Face label of symbol s on the face of axis `axis` in direction
    // `dir` (+1 or -1). Faces are stored -x,+x,-y,+y,-z,+z.
    const std::string& face(int s, int axis, int dir) const {
        return alphabet[s].faces[2 * axis + (dir > 0 ? 1 : 0)];
    }
};

// Wang compilation: for every axis, any two adjacent cells whose facing
// labels differ are forbidden. Emitted as one product family per mismatched
// (positive-face, negative-face) label pair; expand_rule() recovers the
// concrete domino view.
inline ShiftSpec compile_wang(const ShiftSpec& in) {
    if (!in.wang_mode) throw spec_error(in.name + ": compile_wang on non-wang spec");
    if (!in.alphabet.fully_face_labeled(in.dim))
        throw spec_error(in.name + ": MissingFaceLabels");
    ShiftSpec out = in;
    out.wang_mode = false;
    for (int axis = 0; axis < in.dim; ++axis) {
        // Group symbols by their +face and -face labels.
        std::map<std::string, SymbolSet> pos, neg;
        for (int s = 0; s < in.nsym(); ++s) {
            pos[in.face(s, axis, +1)].set(s);
            neg[in.face(s, axis, -1)].set(s);
        }
        Coord step;
        step[axis] = 1;
        for (const auto& [fp, sp] : pos)
            for (const auto& [fn, sn] : neg) {
                if (fp == fn) continue;
                Rule r;
                r.at = {Coord{}, step};
                r.in = {sp, sn};
                r.tag = "wang:" + std::string(1, char('x' + axis));
                out.class_rules.push_back(std::move(r));
            }
    }
    out.compiled = false;
    return out;
}

inline void compile(ShiftSpec& spec) {
    if (spec.compiled) return;
    if (spec.wang_mode) spec = compile_wang(spec);
    spec.alphabet.check(spec.dim);
    spec.rules.clear();
    for (const auto& p : spec.forbidden) {
        Rule r;
        r.tag = "forbidden";
        for (size_t i = 0; i < p.size(); ++i) {
            r.at.push_back(p.support.cells[i]);
            if (p.sym[i] < 0 || p.sym[i] >= spec.nsym())
                throw spec_error(spec.name + ": SymbolOutOfRange in forbidden pattern");
            r.in.push_back(SymbolSet::single(p.sym[i]));
        }
        spec.rules.push_back(std::move(r));
    }
    for (const auto& r : spec.class_rules) spec.rules.push_back(r);
    spec.compiled = true;
}

inline ShiftSpec compiled(ShiftSpec spec) {
    compile(spec);
    return spec;
}

// Expand a product family into its concrete patterns. Only intended for
// small families (tests, traces).
inline std::vector<Pattern> expand_rule(const Rule& r) {
    std::vector<Pattern> out;
    std::vector<int> pick(r.arity());
    std::vector<std::vector<int>> choices(r.arity());
    for (size_t i = 0; i < r.arity(); ++i)
        for (int s = r.in[i].first(); s >= 0; s = r.in[i].next(s)) choices[i].push_back(s);
    std::vector<size_t> idx(r.arity(), 0);
    while (true) {
        std::vector<Coord> cells = r.at;
        std::vector<int> sym(r.arity());
        for (size_t i = 0; i < r.arity(); ++i) sym[i] = choices[i][idx[i]];
        // Support construction sorts cells; keep symbols aligned.
        std::vector<std::pair<Coord, int>> cs;
        for (size_t i = 0; i < r.arity(); ++i) cs.emplace_back(cells[i], sym[i]);
        std::sort(cs.begin(), cs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Coord> sup;
        std::vector<int> a;
        for (auto& [c, s] : cs) {
            sup.push_back(c);
            a.push_back(s);
        }
        out.emplace_back(Support{sup}, a);
        size_t i = 0;
        for (; i < r.arity(); ++i) {
            if (++idx[i] < choices[i].size()) break;
            idx[i] = 0;
        }
        if (i == r.arity()) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Local admissibility: true iff no translate of any forbidden family lands
// entirely inside p's support with all memberships holding. This is the
// independent checker; the solver re-derives the same predicate via
// propagation but results are always re-checked through here.
inline bool validate_pattern(const ShiftSpec& spec, const Pattern& p) {
    if (!spec.compiled) throw spec_error(spec.name + ": validate_pattern on uncompiled spec");
    for (int s : p.sym)
        if (s < 0 || s >= spec.nsym()) throw spec_error(spec.name + ": SymbolOutOfRange");
    for (const auto& r : spec.rules) {
        // Anchor ranges: for each cell of p, the anchor g = cell - at[0] is a
        // candidate; cheaper to iterate anchors from cells matching at[0].
        for (const auto& c : p.support.cells) {
            Coord g = c - r.at[0];
            bool all = true;
            for (size_t i = 0; i < r.arity() && all; ++i) {
                int idx = p.support.index_of(g + r.at[i]);
                if (idx < 0 || !r.in[i].test(p.sym[idx])) all = false;
            }
            if (all) return false;
        }
    }
    return true;
}

// Torus validity: every family placement, wrapped modulo periods, must be
// non-violated. `data` is row-major over the fundamental domain in canonical
// order (x slowest ... z fastest, matching Support's lexicographic order).
struct TorusConfig {
    int dim = 1;
    Coord periods{1, 1, 1};
    std::vector<int> data;

    int cells() const {
        int n = 1;
        for (int i = 0; i < dim; ++i) n *= periods[i];
        return n;
    }
    int wrap_index(Coord c) const {
        int idx = 0;
        for (int i = 0; i < dim; ++i) {
            int m = ((c[i] % periods[i]) + periods[i]) % periods[i];
            idx = idx * periods[i] + m;
        }
        return idx;
    }
    int at(const Coord& c) const { return data[wrap_index(c)]; }
    void set(const Coord& c, int s) { data[wrap_index(c)] = s; }

    friend bool operator==(const TorusConfig& a, const TorusConfig& b) {
        return a.dim == b.dim && a.periods == b.periods && a.data == b.data;
    }
};

inline bool validate_torus(const ShiftSpec& spec, const TorusConfig& t) {
    if (!spec.compiled) throw spec_error(spec.name + ": validate_torus on uncompiled spec");
    for (int i = 0; i < spec.dim; ++i)
        if (t.periods[i] <= 2 * spec.radius[i]) return false;  // wrapping ill-defined
    for (int s : t.data)
        if (s < 0 || s >= spec.nsym()) throw spec_error(spec.name + ": SymbolOutOfRange");
    // Iterate anchors over the fundamental domain.
    std::vector<Coord> domain;
    for (int x = 0; x < t.periods[0]; ++x)
        for (int y = 0; y < (spec.dim > 1 ? t.periods[1] : 1); ++y)
            for (int z = 0; z < (spec.dim > 2 ? t.periods[2] : 1); ++z)
                domain.push_back(Coord{x, y, z});
    for (const auto& r : spec.rules)
        for (const auto& g : domain) {
            bool all = true;
            for (size_t i = 0; i < r.arity() && all; ++i)
                if (!r.in[i].test(t.at(g + r.at[i]))) all = false;
            if (all) return false;
        }
    return true;
}

// Restriction of a wrapped torus to a finite support (reading the periodic
// configuration the torus represents).
inline Pattern torus_window(const TorusConfig& t, const Support& s) {
    std::vector<int> a;
    a.reserve(s.size());
    for (const auto& c : s.cells) a.push_back(t.at(c));
    return Pattern(s, std::move(a));
}

}  // namespace sft
