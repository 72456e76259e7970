#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sft {

// Lattice coordinate in Z^d, d <= 3. Unused trailing components stay zero so
// lexicographic comparison over all three entries matches comparison over the
// first d entries.
struct Coord {
    std::array<int, 3> v{0, 0, 0};

    Coord() = default;
    Coord(int x) : v{x, 0, 0} {}
    Coord(int x, int y) : v{x, y, 0} {}
    Coord(int x, int y, int z) : v{x, y, z} {}

    int& operator[](int i) { return v[i]; }
    int operator[](int i) const { return v[i]; }

    friend Coord operator+(Coord a, const Coord& b) {
        for (int i = 0; i < 3; ++i) a.v[i] += b.v[i];
        return a;
    }
    friend Coord operator-(Coord a, const Coord& b) {
        for (int i = 0; i < 3; ++i) a.v[i] -= b.v[i];
        return a;
    }
    Coord operator-() const { return Coord{-v[0], -v[1], -v[2]}; }

    friend bool operator==(const Coord& a, const Coord& b) { return a.v == b.v; }
    friend bool operator!=(const Coord& a, const Coord& b) { return a.v != b.v; }
    friend bool operator<(const Coord& a, const Coord& b) { return a.v < b.v; }
};

inline std::string to_string(const Coord& c, int dim) {
    std::string s = "(";
    for (int i = 0; i < dim; ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
    }
    return s + ")";
}

struct CoordHash {
    size_t operator()(const Coord& c) const {
        uint64_t h = 1469598103934665603ull;
        for (int i = 0; i < 3; ++i) {
            h ^= static_cast<uint64_t>(static_cast<uint32_t>(c[i]));
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

// Finite set of cells in canonical (lexicographic) order, no duplicates.
struct Support {
    std::vector<Coord> cells;

    Support() = default;
    explicit Support(std::vector<Coord> cs) : cells(std::move(cs)) { canonicalize(); }

    void canonicalize() {
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    }

    size_t size() const { return cells.size(); }
    bool empty() const { return cells.empty(); }
    bool contains(const Coord& c) const {
        return std::binary_search(cells.begin(), cells.end(), c);
    }
    // Index of a cell in canonical order, or -1.
    int index_of(const Coord& c) const {
        auto it = std::lower_bound(cells.begin(), cells.end(), c);
        if (it == cells.end() || *it != c) return -1;
        return static_cast<int>(it - cells.begin());
    }
    bool subset_of(const Support& other) const {
        for (const auto& c : cells)
            if (!other.contains(c)) return false;
        return true;
    }

    friend bool operator==(const Support& a, const Support& b) { return a.cells == b.cells; }
    friend bool operator<(const Support& a, const Support& b) { return a.cells < b.cells; }
};

// The box [-n,n]^d in canonical order; |result| = (2n+1)^d.
inline Support box(int dim, int n) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("box: dimension must be 1..3");
    if (n < 0) throw std::invalid_argument("box: radius must be >= 0");
    std::vector<Coord> cs;
    int lo[3] = {-n, -n, -n}, hi[3] = {n, n, n};
    for (int i = dim; i < 3; ++i) lo[i] = hi[i] = 0;
    for (int x = lo[0]; x <= hi[0]; ++x)
        for (int y = lo[1]; y <= hi[1]; ++y)
            for (int z = lo[2]; z <= hi[2]; ++z) cs.push_back(Coord{x, y, z});
    return Support(std::move(cs));
}

// Anisotropic box [-r[i], r[i]] per axis.
inline Support box_aniso(int dim, const Coord& r) {
    std::vector<Coord> cs;
    int lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
    for (int i = 0; i < dim; ++i) {
        lo[i] = -r[i];
        hi[i] = r[i];
    }
    for (int x = lo[0]; x <= hi[0]; ++x)
        for (int y = lo[1]; y <= hi[1]; ++y)
            for (int z = lo[2]; z <= hi[2]; ++z) cs.push_back(Coord{x, y, z});
    return Support(std::move(cs));
}

inline Support translate(const Support& s, const Coord& v) {
    std::vector<Coord> cs;
    cs.reserve(s.size());
    for (const auto& c : s.cells) cs.push_back(c + v);
    return Support(std::move(cs));  // translation preserves lex order, sort is cheap anyway
}

// Minkowski dilation of s by box(dim, m).
inline Support dilate(const Support& s, int dim, int m) {
    if (m == 0) return s;
    Support b = box(dim, m);
    std::vector<Coord> cs;
    cs.reserve(s.size() * b.size());
    for (const auto& c : s.cells)
        for (const auto& d : b.cells) cs.push_back(c + d);
    return Support(std::move(cs));
}

inline Support support_union(const Support& a, const Support& b) {
    std::vector<Coord> cs = a.cells;
    cs.insert(cs.end(), b.cells.begin(), b.cells.end());
    return Support(std::move(cs));
}

// Inclusive bounding box of a support.
inline void bounds(const Support& s, Coord& lo, Coord& hi) {
    if (s.empty()) {
        lo = hi = Coord{};
        return;
    }
    lo = hi = s.cells[0];
    for (const auto& c : s.cells)
        for (int i = 0; i < 3; ++i) {
            lo[i] = std::min(lo[i], c[i]);
            hi[i] = std::max(hi[i], c[i]);
        }
}

}  // namespace sft
