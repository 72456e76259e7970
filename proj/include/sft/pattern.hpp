#pragma once

#include <stdexcept>

#include "sft/alphabet.hpp"
#include "sft/geometry.hpp"

namespace sft {

// Finite support -> symbol index map. The assignment is stored parallel to
// the support's canonical cell order, so equality is support-wise and
// symbol-wise by construction.
struct Pattern {
    Support support;
    std::vector<int> sym;  // sym[i] belongs to support.cells[i]

    Pattern() = default;
    Pattern(Support s, std::vector<int> a) : support(std::move(s)), sym(std::move(a)) {
        if (support.size() != sym.size()) throw spec_error("pattern: assignment not total");
    }
    // Constant pattern.
    static Pattern constant(Support s, int symbol) {
        std::vector<int> a(s.size(), symbol);
        return Pattern(std::move(s), std::move(a));
    }

    size_t size() const { return support.size(); }
    int at(const Coord& c) const {
        int i = support.index_of(c);
        if (i < 0) throw spec_error("pattern: cell outside support " + to_string(c, 3));
        return sym[i];
    }
    bool defined(const Coord& c) const { return support.contains(c); }

    friend bool operator==(const Pattern& a, const Pattern& b) {
        return a.support == b.support && a.sym == b.sym;
    }
    friend bool operator<(const Pattern& a, const Pattern& b) {
        if (!(a.support == b.support)) return a.support < b.support;
        return a.sym < b.sym;
    }
};

// Shift action: support moves by v, symbols unchanged.
inline Pattern translate(const Pattern& p, const Coord& v) {
    // Translation preserves lexicographic cell order, so the assignment
    // vector carries over index-by-index.
    return Pattern(translate(p.support, v), p.sym);
}

// Restriction of p to sub; throws if sub is not contained in p's support.
inline Pattern restrict(const Pattern& p, const Support& sub) {
    std::vector<int> a;
    a.reserve(sub.size());
    for (const auto& c : sub.cells) a.push_back(p.at(c));
    return Pattern(sub, std::move(a));
}

}  // namespace sft
