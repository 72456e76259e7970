#pragma once

#include "sft/shift.hpp"

namespace sft {
namespace zoo {

// ---- calibration shifts -----------------------------------------------------

inline ShiftSpec full_shift(int k, int d) {
    if (k < 1) throw spec_error("full_shift: k must be >= 1");
    ShiftSpec s;
    s.name = "full-" + std::to_string(k) + "-z" + std::to_string(d);
    s.dim = d;
    s.radius = Coord{1, 1, 1};
    for (int i = 0; i < k; ++i) s.alphabet.add(std::to_string(i));
    compile(s);
    return s;
}

inline ShiftSpec golden_mean() {
    ShiftSpec s;
    s.name = "golden-mean";
    s.dim = 1;
    s.radius = Coord{1, 1, 1};
    s.alphabet.add("0");
    s.alphabet.add("1");
    s.add_forbidden(Pattern(Support{{Coord{0}, Coord{1}}}, {1, 1}));
    compile(s);
    return s;
}

inline ShiftSpec hard_squares() {
    ShiftSpec s;
    s.name = "hard-squares";
    s.dim = 2;
    s.radius = Coord{1, 1, 1};
    s.alphabet.add("0");
    s.alphabet.add("1");
    s.add_forbidden(Pattern(Support{{Coord{0, 0}, Coord{1, 0}}}, {1, 1}));
    s.add_forbidden(Pattern(Support{{Coord{0, 0}, Coord{0, 1}}}, {1, 1}));
    compile(s);
    return s;
}

// Sunny-side-up: at most one 1 in any configuration. Not of finite type, so
// it ships as a custom-validated shift.
inline Shift sunny_side_up() {
    Shift sh;
    sh.kind = Shift::Custom;
    sh.spec.name = "sunny-side-up";
    sh.spec.dim = 1;
    sh.spec.radius = Coord{1, 1, 1};
    sh.spec.alphabet.add("0");
    sh.spec.alphabet.add("1");
    sh.spec.validator = "at-most-one-1";
    sh.spec.compiled = true;
    sh.valid = [](const Pattern& p) {
        int ones = 0;
        for (int s : p.sym) ones += (s == 1);
        return ones <= 1;
    };
    sh.torus_valid = [](const TorusConfig& t) {
        for (int s : t.data)
            if (s == 1) return false;  // a periodic point with a 1 has infinitely many
        return true;
    };
    return sh;
}

// Lift a Z^1 spec to Z^2 with rows constant along y (vertical equality),
// original rules along x. Used to feed 1d shifts to the strip method.
inline ShiftSpec as_z2_rows(const ShiftSpec& one_d) {
    if (one_d.dim != 1) throw spec_error("as_z2_rows: input must be 1-dimensional");
    ShiftSpec s;
    s.name = one_d.name + "-rows";
    s.dim = 2;
    s.radius = Coord{one_d.radius[0], 1, 1};
    s.alphabet = one_d.alphabet;
    for (const auto& p : one_d.forbidden) s.forbidden.push_back(p);  // offsets already on x-axis
    for (const auto& r : one_d.class_rules) s.class_rules.push_back(r);
    for (int sym = 0; sym < s.alphabet.size(); ++sym) {
        Rule r;
        r.at = {Coord{0, 0}, Coord{0, 1}};
        r.in = {SymbolSet::single(sym), ~SymbolSet::single(sym)};
        r.tag = "row-constant";
        s.class_rules.push_back(std::move(r));
    }
    compile(s);
    return s;
}

// ---- the Worm Shift precursor (7 Wang tiles) --------------------------------
//
// Tiles: white; vertical blue/red line; four corner tiles. A corner tile has
// one vertical stub and one horizontal stub; the color pattern (red on the
// left column of a worm, blue on the right) is what confines worms to two
// adjacent columns. Face labels: "-" no line, "b" blue, "r" red, stored in
// the order -x,+x,-y,+y.
inline ShiftSpec worm_precursor() {
    ShiftSpec s;
    s.name = "worm-precursor";
    s.dim = 2;
    s.radius = Coord{1, 1, 1};
    auto add = [&](const char* name, const char* l, const char* r, const char* b, const char* t,
                   int nonwhite) {
        int i = s.alphabet.add(name);
        s.alphabet[i].faces = {l, r, b, t};
        s.alphabet[i].attrs["nonwhite"] = nonwhite;
    };
    add("white", "-", "-", "-", "-", 0);
    add("bline", "-", "-", "b", "b", 1);  // vertical blue line
    add("rline", "-", "-", "r", "r", 1);  // vertical red line
    add("rd", "-", "b", "r", "-", 1);     // red stub down, blue stub right
    add("ru", "-", "r", "-", "r", 1);     // red stub up, red stub right
    add("bd", "r", "-", "b", "-", 1);     // blue stub down, red stub left
    add("bu", "b", "-", "-", "b", 1);     // blue stub up, blue stub left
    s.wang_mode = true;
    compile(s);
    return s;
}

// Color-erasing factor: blue/red lines collapse to one line tile, corner
// shapes survive.
inline BlockCode worm_shift_code() {
    ShiftSpec cover = worm_precursor();
    Alphabet target;
    target.add("white");
    target.add("line");
    target.add("dr");  // corner with stubs down+right
    target.add("ur");
    target.add("dl");
    target.add("ul");
    for (int i = 1; i < target.size(); ++i) target[i].attrs["nonwhite"] = 1;
    target[0].attrs["nonwhite"] = 0;
    std::vector<int> map(cover.nsym());
    map[cover.alphabet.require("white")] = 0;
    map[cover.alphabet.require("bline")] = 1;
    map[cover.alphabet.require("rline")] = 1;
    map[cover.alphabet.require("rd")] = 2;
    map[cover.alphabet.require("ru")] = 3;
    map[cover.alphabet.require("bd")] = 4;
    map[cover.alphabet.require("bu")] = 5;
    return BlockCode::cellwise(cover.alphabet, target, map);
}

inline Shift worm_shift() {
    return Shift::sofic("worm-shift", worm_precursor(), worm_shift_code());
}

// ---- X_struct (59 Wang tiles) -----------------------------------------------
//
// Three special tiles (white, diagonal, dash) plus seven wire-tile shapes,
// each independently colorable wire blue (0) or red (1):
//   v  - two vertical wires               (2 wires)
//   h  - two horizontal wires             (2 wires)
//   x  - four corner L-wires              (4 wires)
//   tu - horizontal through + two L-wires up    (3 wires)
//   td - horizontal through + two L-wires down  (3 wires)
//   tr - vertical through + two L-wires right   (3 wires)
//   tl - vertical through + two L-wires left    (3 wires)
// Corner values SW/SE/NW/NE record the color of the wire nearest each tile
// corner (0 blue, 1 red). Edge labels carry the fill-and-wire profile along
// each face: "W" all white, "G" all grey, "Vab"/"Hab" a double wire with
// colors a (lower/left) and b (upper/right).
//
// Total symbols: 3 + 4 + 4 + 16 + 8 + 8 + 8 + 8 = 59.
inline ShiftSpec x_struct() {
    ShiftSpec s;
    s.name = "x-struct";
    s.dim = 2;
    s.radius = Coord{1, 1, 1};
    auto V = [](int a, int b) { return std::string("V") + char('0' + a) + char('0' + b); };
    auto H = [](int a, int b) { return std::string("H") + char('0' + a) + char('0' + b); };
    auto add = [&](const std::string& name, std::string l, std::string r, std::string b,
                   std::string t, int sw, int se, int nw, int ne, int wire) {
        int i = s.alphabet.add(name);
        s.alphabet[i].faces = {std::move(l), std::move(r), std::move(b), std::move(t)};
        auto& a = s.alphabet[i].attrs;
        if (wire) {
            a["SW"] = sw;
            a["SE"] = se;
            a["NW"] = nw;
            a["NE"] = ne;
        }
        a["wire"] = wire;
        a["nonwhite"] = (name == "w") ? 0 : 1;
    };
    auto d01 = [](int a) { return std::string(1, char('0' + a)); };
    add("w", "W", "W", "W", "W", 0, 0, 0, 0, 0);
    add("diag", "G", "W", "W", "G", 0, 0, 0, 0, 0);
    add("dash", "G", "G", "G", "G", 0, 0, 0, 0, 0);
    for (int c1 = 0; c1 < 2; ++c1)
        for (int c2 = 0; c2 < 2; ++c2)
            add("v" + d01(c1) + d01(c2), "W", "G", H(c1, c2), H(c1, c2), c1, c2, c1, c2, 1);
    for (int c1 = 0; c1 < 2; ++c1)
        for (int c2 = 0; c2 < 2; ++c2)
            add("h" + d01(c1) + d01(c2), V(c1, c2), V(c1, c2), "G", "W", c1, c1, c2, c2, 1);
    for (int sw = 0; sw < 2; ++sw)
        for (int nw = 0; nw < 2; ++nw)
            for (int se = 0; se < 2; ++se)
                for (int ne = 0; ne < 2; ++ne)
                    add("x" + d01(sw) + d01(nw) + d01(se) + d01(ne), V(sw, nw), V(se, ne),
                        H(sw, se), H(nw, ne), sw, se, nw, ne, 1);
    for (int t = 0; t < 2; ++t)
        for (int nw = 0; nw < 2; ++nw)
            for (int ne = 0; ne < 2; ++ne)
                add("tu" + d01(t) + d01(nw) + d01(ne), V(t, nw), V(t, ne), "G", H(nw, ne), t, t,
                    nw, ne, 1);
    for (int t = 0; t < 2; ++t)
        for (int sw = 0; sw < 2; ++sw)
            for (int se = 0; se < 2; ++se)
                add("td" + d01(t) + d01(sw) + d01(se), V(sw, t), V(se, t), H(sw, se), "W", sw, se,
                    t, t, 1);
    for (int t = 0; t < 2; ++t)
        for (int se = 0; se < 2; ++se)
            for (int ne = 0; ne < 2; ++ne)
                add("tr" + d01(t) + d01(se) + d01(ne), "W", V(se, ne), H(t, se), H(t, ne), t, se,
                    t, ne, 1);
    for (int t = 0; t < 2; ++t)
        for (int sw = 0; sw < 2; ++sw)
            for (int nw = 0; nw < 2; ++nw)
                add("tl" + d01(t) + d01(sw) + d01(nw), V(sw, nw), "G", H(sw, t), H(nw, t), sw, t,
                    nw, t, 1);
    s.wang_mode = true;
    compile(s);
    return s;
}

// The all-blue cross tile ("blue sky" filler).
inline int blue_cross(const ShiftSpec& xs) { return xs.alphabet.require("x0000"); }

// ---- the Good Wave Shift (Z^3, 118 symbols) ---------------------------------
//
// Alphabet: x_struct tiles paired with a cube flag; symbol "<tile>.e" has no
// cube, "<tile>.c" has one. Rule families:
//   1  each z-plane is x_struct-valid (Wang matching along x and y)
//   2  a non-white tile forces white above it at z+1 and z+2
//   3  a cube forces empty above it at z+1 and z+2
//   4  a cube forces exactly one cube among the three z-offsets -1,0,+1 of
//      each of its four lateral neighbors
//   5  a non-white tile has a cube at the same cell or directly above
//   6  a wire tile places cubes at its four corners at heights given by the
//      corner values
//   7  a diagonal cube step forces the matching wire tile at the lower level
inline ShiftSpec good_wave() {
    ShiftSpec xs = x_struct();
    ShiftSpec s;
    s.name = "good-wave";
    s.dim = 3;
    s.radius = Coord{1, 1, 2};
    const int nx = xs.nsym();
    for (int t = 0; t < nx; ++t)
        for (int c = 0; c < 2; ++c) {
            int i = s.alphabet.add(xs.alphabet[t].name + (c ? ".c" : ".e"));
            auto& a = s.alphabet[i].attrs;
            a = xs.alphabet[t].attrs;
            a["cube"] = c;
        }
    auto lift = [&](const SymbolSet& sigma) {  // x_struct set -> both cube flags
        SymbolSet out;
        for (int t = sigma.first(); t >= 0; t = sigma.next(t)) {
            out.set(2 * t);
            out.set(2 * t + 1);
        }
        return out;
    };
    SymbolSet cube = s.alphabet.attr_set("cube", 1);
    SymbolSet empty = s.alphabet.attr_set("cube", 0);
    SymbolSet nonwhite = s.alphabet.attr_set("nonwhite", 1);
    SymbolSet wire = s.alphabet.attr_set("wire", 1);
    s.sets["CUBE"] = cube;
    s.sets["EMPTY"] = empty;
    s.sets["NONWHITE"] = nonwhite;
    s.sets["WIRE"] = wire;

    auto rule = [&](std::vector<Coord> at, std::vector<SymbolSet> in, const char* tag) {
        Rule r;
        r.at = std::move(at);
        r.in = std::move(in);
        r.tag = tag;
        s.add_class_rule(std::move(r));
    };

    // 1: planar Wang matching, per lateral axis, inside each z-plane.
    for (int axis = 0; axis < 2; ++axis) {
        std::map<std::string, SymbolSet> pos, neg;
        for (int t = 0; t < nx; ++t) {
            pos[xs.face(t, axis, +1)].set(t);
            neg[xs.face(t, axis, -1)].set(t);
        }
        Coord step;
        step[axis] = 1;
        for (const auto& [fp, sp] : pos)
            for (const auto& [fn, sn] : neg) {
                if (fp == fn) continue;
                rule({Coord{0, 0, 0}, step}, {lift(sp), lift(sn)}, "plane-wang");
            }
    }
    // 2: Sigma isolation upward.
    rule({Coord{0, 0, 0}, Coord{0, 0, 1}}, {nonwhite, nonwhite}, "sigma-gap1");
    rule({Coord{0, 0, 0}, Coord{0, 0, 2}}, {nonwhite, nonwhite}, "sigma-gap2");
    // 3: cube vertical gaps.
    rule({Coord{0, 0, 0}, Coord{0, 0, 1}}, {cube, cube}, "cube-gap1");
    rule({Coord{0, 0, 0}, Coord{0, 0, 2}}, {cube, cube}, "cube-gap2");
    // 4: exactly one cube near each lateral neighbor of a cube.
    const Coord lat[4] = {Coord{1, 0, 0}, Coord{-1, 0, 0}, Coord{0, 1, 0}, Coord{0, -1, 0}};
    for (const auto& u : lat) {
        rule({Coord{0, 0, 0}, u + Coord{0, 0, -1}, u, u + Coord{0, 0, 1}},
             {cube, empty, empty, empty}, "wave-none");
        const Coord offs[3] = {u + Coord{0, 0, -1}, u, u + Coord{0, 0, 1}};
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                rule({Coord{0, 0, 0}, offs[i], offs[j]}, {cube, cube, cube}, "wave-two");
    }
    // 5: non-white needs a cube at z or z+1.
    rule({Coord{0, 0, 0}, Coord{0, 0, 1}}, {nonwhite & empty, empty}, "tile-needs-cube");
    // 6: wire corners place cubes at corner-value heights.
    const struct {
        const char* attr;
        Coord u;
    } corners[4] = {{"SW", Coord{0, 0, 0}},
                    {"SE", Coord{1, 0, 0}},
                    {"NW", Coord{0, 1, 0}},
                    {"NE", Coord{1, 1, 0}}};
    for (const auto& k : corners)
        for (int v = 0; v < 2; ++v) {
            SymbolSet sel = wire & s.alphabet.attr_set(k.attr, v);
            rule({Coord{0, 0, 0}, k.u + Coord{0, 0, v}}, {sel, empty}, "corner-cube");
        }
    // 7: steps force wires. Axis x uses SW/SE, axis y uses SW/NW.
    const struct {
        Coord u;
        const char* lo;
        const char* hi;
    } steps[2] = {{Coord{1, 0, 0}, "SW", "SE"}, {Coord{0, 1, 0}, "SW", "NW"}};
    for (const auto& st : steps) {
        SymbolSet up_wire = wire & s.alphabet.attr_set(st.lo, 0) & s.alphabet.attr_set(st.hi, 1);
        SymbolSet dn_wire = wire & s.alphabet.attr_set(st.lo, 1) & s.alphabet.attr_set(st.hi, 0);
        // step up: cube here and cube diagonally up across u -> this cell is a wire with lo=0,hi=1
        rule({Coord{0, 0, 0}, st.u + Coord{0, 0, 1}}, {cube & ~up_wire, cube}, "step-up");
        // step down: cube here and cube diagonally down -> wire below with lo=1,hi=0
        rule({Coord{0, 0, 0}, st.u + Coord{0, 0, -1}, Coord{0, 0, -1}}, {cube, cube, ~dn_wire},
             "step-down");
    }
    compile(s);
    return s;
}

// Blank Good-Wave symbol (white tile, no cube).
inline int gw_blank(const ShiftSpec& gw) { return gw.alphabet.require("w.e"); }
inline int gw_cube(const ShiftSpec& gw) { return gw.alphabet.require("w.c"); }

// ---- registry ----------------------------------------------------------------

inline Shift by_name(const std::string& name) {
    if (name == "golden-mean") return Shift::sft(golden_mean());
    if (name == "hard-squares") return Shift::sft(hard_squares());
    if (name == "sunny-side-up") return sunny_side_up();
    if (name == "worm-precursor") return Shift::sft(worm_precursor());
    if (name == "worm-shift") return worm_shift();
    if (name == "x-struct") return Shift::sft(x_struct());
    if (name == "good-wave") return Shift::sft(good_wave());
    if (name.rfind("full-", 0) == 0) {
        // full-<k>-z<d>
        auto rest = name.substr(5);
        auto zpos = rest.find("-z");
        if (zpos != std::string::npos) {
            int k = std::stoi(rest.substr(0, zpos));
            int d = std::stoi(rest.substr(zpos + 2));
            return Shift::sft(full_shift(k, d));
        }
    }
    throw spec_error("unknown shift: " + name);
}

inline std::vector<std::string> names() {
    return {"golden-mean", "hard-squares", "sunny-side-up", "worm-precursor",
            "worm-shift",  "x-struct",     "good-wave",     "full-2-z1",
            "full-2-z2"};
}

}  // namespace zoo
}  // namespace sft
