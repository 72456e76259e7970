#pragma once

#include <sstream>

#include "sft/shift_spec.hpp"

namespace sft {

// Deterministic SVG renders. All geometry is integer, so output bytes are a
// pure function of the input.

namespace render_detail {

constexpr int kCell = 20;

inline void rect(std::ostringstream& s, int x, int y, int w, int h, const char* fill) {
    s << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"1\"/>";
}
inline void line(std::ostringstream& s, int x1, int y1, int x2, int y2, const char* color,
                 int width) {
    s << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
      << "\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"/>";
}

inline const char* wire_color(int v) { return v ? "#cc3333" : "#2244cc"; }

// Draw one tile of the worm precursor / worm shift family into a cell whose
// top-left corner is (px, py). Color codes: 0 none, 1 blue, 2 red,
// 3 uncolored (factor tiles).
inline void worm_tile(std::ostringstream& s, int px, int py, int up, int down, int left,
                      int right) {
    auto col = [](int c) { return c == 1 ? "#2244cc" : (c == 2 ? "#cc3333" : "#222222"); };
    const int c = kCell, h = kCell / 2;
    rect(s, px, py, c, c, "white");
    if (up) line(s, px + h, py, px + h, py + h, col(up), 3);
    if (down) line(s, px + h, py + h, px + h, py + c, col(down), 3);
    if (left) line(s, px, py + h, px + h, py + h, col(left), 3);
    if (right) line(s, px + h, py + h, px + c, py + h, col(right), 3);
}

// x_struct tile by name (optionally carrying Good-Wave cube shading).
inline void struct_tile(std::ostringstream& s, int px, int py, const Symbol& sym, bool cube) {
    const int c = kCell, h = kCell / 2;
    rect(s, px, py, c, c, cube ? "#e8d9a0" : "white");
    const std::string& n = sym.name;
    auto base = n.substr(0, n.find('.'));
    if (base == "dash") {
        rect(s, px + 2, py + 2, c - 4, c - 4, "#bbbbbb");
        return;
    }
    if (base == "diag") {
        line(s, px, py + c, px + c, py, "#888888", 2);
        return;
    }
    if (base == "w") return;
    int sw = sym.attr_or("SW", 0), se = sym.attr_or("SE", 0), nw = sym.attr_or("NW", 0),
        ne = sym.attr_or("NE", 0);
    char shape = base[0];  // v,h,x,t
    std::string kind = base.substr(0, 2);
    // SVG y grows downward; the tile's south edge is at py + c.
    if (shape == 'v') {
        line(s, px + h - 3, py, px + h - 3, py + c, wire_color(sw), 2);
        line(s, px + h + 3, py, px + h + 3, py + c, wire_color(se), 2);
    } else if (shape == 'h') {
        line(s, px, py + h + 3, px + c, py + h + 3, wire_color(sw), 2);  // lower wire
        line(s, px, py + h - 3, px + c, py + h - 3, wire_color(nw), 2);
    } else if (shape == 'x') {
        line(s, px + h - 3, py + c, px + h - 3, py + h + 3, wire_color(sw), 2);
        line(s, px + h - 3, py + h + 3, px, py + h + 3, wire_color(sw), 2);
        line(s, px + h + 3, py + c, px + h + 3, py + h + 3, wire_color(se), 2);
        line(s, px + h + 3, py + h + 3, px + c, py + h + 3, wire_color(se), 2);
        line(s, px + h - 3, py, px + h - 3, py + h - 3, wire_color(nw), 2);
        line(s, px + h - 3, py + h - 3, px, py + h - 3, wire_color(nw), 2);
        line(s, px + h + 3, py, px + h + 3, py + h - 3, wire_color(ne), 2);
        line(s, px + h + 3, py + h - 3, px + c, py + h - 3, wire_color(ne), 2);
    } else if (kind == "tu") {
        line(s, px, py + h + 3, px + c, py + h + 3, wire_color(sw), 2);  // through (south side)
        line(s, px + h - 3, py, px + h - 3, py + h - 3, wire_color(nw), 2);
        line(s, px + h - 3, py + h - 3, px, py + h - 3, wire_color(nw), 2);
        line(s, px + h + 3, py, px + h + 3, py + h - 3, wire_color(ne), 2);
        line(s, px + h + 3, py + h - 3, px + c, py + h - 3, wire_color(ne), 2);
    } else if (kind == "td") {
        line(s, px, py + h - 3, px + c, py + h - 3, wire_color(nw), 2);
        line(s, px + h - 3, py + c, px + h - 3, py + h + 3, wire_color(sw), 2);
        line(s, px + h - 3, py + h + 3, px, py + h + 3, wire_color(sw), 2);
        line(s, px + h + 3, py + c, px + h + 3, py + h + 3, wire_color(se), 2);
        line(s, px + h + 3, py + h + 3, px + c, py + h + 3, wire_color(se), 2);
    } else if (kind == "tr") {
        line(s, px + h - 3, py, px + h - 3, py + c, wire_color(sw), 2);
        line(s, px + h + 3, py + c, px + h + 3, py + h + 3, wire_color(se), 2);
        line(s, px + h + 3, py + h + 3, px + c, py + h + 3, wire_color(se), 2);
        line(s, px + h + 3, py, px + h + 3, py + h - 3, wire_color(ne), 2);
        line(s, px + h + 3, py + h - 3, px + c, py + h - 3, wire_color(ne), 2);
    } else if (kind == "tl") {
        line(s, px + h + 3, py, px + h + 3, py + c, wire_color(se), 2);
        line(s, px + h - 3, py + c, px + h - 3, py + h + 3, wire_color(sw), 2);
        line(s, px + h - 3, py + h + 3, px, py + h + 3, wire_color(sw), 2);
        line(s, px + h - 3, py, px + h - 3, py + h - 3, wire_color(nw), 2);
        line(s, px + h - 3, py + h - 3, px, py + h - 3, wire_color(nw), 2);
    }
}

inline void generic_tile(std::ostringstream& s, int px, int py, int sym, int nsym) {
    static const char* palette[8] = {"#ffffff", "#444444", "#cc3333", "#2244cc",
                                     "#33aa55", "#ddaa22", "#8844cc", "#22bbbb"};
    rect(s, px, py, kCell, kCell, palette[sym % (nsym > 8 ? 8 : 8)]);
}

}  // namespace render_detail

// Render a 2d window of symbols (row-major, rows top to bottom = decreasing
// y) to SVG. 3d inputs render as one sheet per z-slice, lowest z first, with
// optional crest highlighting.
inline std::string render_svg(const ShiftSpec& spec, const TorusConfig& t,
                              const std::vector<Coord>& highlight = {}) {
    using namespace render_detail;
    if (spec.dim == 1) throw spec_error("render: UnsupportedDimension");
    int px = t.periods[0], py = t.periods[1], pz = spec.dim == 3 ? t.periods[2] : 1;
    const int gap = kCell;
    int sheet_w = px * kCell;
    int width = pz * (sheet_w + gap) - gap;
    int height = py * kCell;
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\">";
    bool wormish = spec.alphabet.index_of("bline") >= 0 || spec.alphabet.index_of("line") >= 0;
    bool structish = spec.alphabet.index_of("dash") >= 0 || spec.alphabet.index_of("dash.e") >= 0;
    for (int z = 0; z < pz; ++z) {
        int x0 = z * (sheet_w + gap);
        for (int x = 0; x < px; ++x)
            for (int y = 0; y < py; ++y) {
                int cx = x0 + x * kCell;
                int cy = (py - 1 - y) * kCell;
                int sym = t.at(Coord{x, y, z});
                const Symbol& S = spec.alphabet[sym];
                if (structish) {
                    bool cube = S.attr_or("cube", 0) != 0;
                    struct_tile(s, cx, cy, S, cube);
                } else if (wormish) {
                    // up,down,left,right color codes from names
                    const std::string& n = S.name;
                    int u = 0, d = 0, l = 0, r = 0;
                    auto C = [&](char c) { return c == 'b' ? 1 : 2; };
                    if (n == "bline") u = d = 1;
                    if (n == "rline") u = d = 2;
                    if (n == "line") u = d = 3;
                    if (n == "rd") { d = C('r'); r = C('b'); }
                    if (n == "ru") { u = C('r'); r = C('r'); }
                    if (n == "bd") { d = C('b'); l = C('r'); }
                    if (n == "bu") { u = C('b'); l = C('b'); }
                    if (n == "dr") { d = 3; r = 3; }
                    if (n == "ur") { u = 3; r = 3; }
                    if (n == "dl") { d = 3; l = 3; }
                    if (n == "ul") { u = 3; l = 3; }
                    worm_tile(s, cx, cy, u, d, l, r);
                } else {
                    generic_tile(s, cx, cy, sym, spec.nsym());
                }
            }
    }
    for (const auto& c : highlight) {
        int z = spec.dim == 3 ? ((c[2] % pz) + pz) % pz : 0;
        int x = ((c[0] % px) + px) % px, y = ((c[1] % py) + py) % py;
        int cx = z * (sheet_w + gap) + x * kCell;
        int cy = (py - 1 - y) * kCell;
        s << "<rect x=\"" << cx + 1 << "\" y=\"" << cy + 1 << "\" width=\"" << kCell - 2
          << "\" height=\"" << kCell - 2
          << "\" fill=\"none\" stroke=\"#ff2222\" stroke-width=\"3\"/>";
    }
    s << "</svg>\n";
    return s.str();
}

inline std::string render_svg(const ShiftSpec& spec, const Pattern& p) {
    // Embed the pattern in its bounding box, blank-filling with symbol 0.
    Coord lo, hi;
    bounds(p.support, lo, hi);
    TorusConfig t;
    t.dim = spec.dim;
    for (int i = 0; i < spec.dim; ++i) t.periods[i] = hi[i] - lo[i] + 1;
    // A plain array render: wrap constraints are irrelevant here.
    t.data.assign(t.cells(), 0);
    for (size_t i = 0; i < p.size(); ++i) t.set(p.support.cells[i] - lo, p.sym[i]);
    return render_svg(spec, t);
}

}  // namespace sft
