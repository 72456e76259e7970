#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sft {

struct spec_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fixed-capacity bitset over symbol indices. Every alphabet in this library
// fits in 128 symbols (the largest, the Good Wave Shift, has 118).
struct SymbolSet {
    static constexpr int kMax = 128;
    uint64_t w0 = 0, w1 = 0;

    static SymbolSet all(int n) {
        SymbolSet s;
        if (n >= 64) {
            s.w0 = ~0ull;
            s.w1 = (n == 128) ? ~0ull : ((1ull << (n - 64)) - 1);
        } else {
            s.w0 = (n == 64) ? ~0ull : ((1ull << n) - 1);
        }
        return s;
    }
    static SymbolSet single(int i) {
        SymbolSet s;
        s.set(i);
        return s;
    }

    void set(int i) { (i < 64 ? w0 : w1) |= 1ull << (i & 63); }
    void reset(int i) { (i < 64 ? w0 : w1) &= ~(1ull << (i & 63)); }
    bool test(int i) const { return ((i < 64 ? w0 : w1) >> (i & 63)) & 1; }
    bool none() const { return w0 == 0 && w1 == 0; }
    int count() const { return __builtin_popcountll(w0) + __builtin_popcountll(w1); }
    // Lowest set bit, or -1.
    int first() const {
        if (w0) return __builtin_ctzll(w0);
        if (w1) return 64 + __builtin_ctzll(w1);
        return -1;
    }
    int next(int i) const {  // lowest set bit > i, or -1
        ++i;
        if (i < 64) {
            uint64_t m = w0 >> i;
            if (m) return i + __builtin_ctzll(m);
            i = 64;
        }
        if (i < 128) {
            uint64_t m = w1 >> (i - 64);
            if (m) return i + __builtin_ctzll(m);
        }
        return -1;
    }

    SymbolSet& operator&=(const SymbolSet& o) {
        w0 &= o.w0;
        w1 &= o.w1;
        return *this;
    }
    SymbolSet& operator|=(const SymbolSet& o) {
        w0 |= o.w0;
        w1 |= o.w1;
        return *this;
    }
    SymbolSet operator~() const {
        SymbolSet s;
        s.w0 = ~w0;
        s.w1 = ~w1;
        return s;
    }
    friend SymbolSet operator&(SymbolSet a, const SymbolSet& b) { return a &= b; }
    friend SymbolSet operator|(SymbolSet a, const SymbolSet& b) { return a |= b; }
    friend bool operator==(const SymbolSet& a, const SymbolSet& b) {
        return a.w0 == b.w0 && a.w1 == b.w1;
    }
    // True if *this is a subset of o.
    bool subset_of(const SymbolSet& o) const { return (w0 & ~o.w0) == 0 && (w1 & ~o.w1) == 0; }
    bool intersects(const SymbolSet& o) const { return (w0 & o.w0) || (w1 & o.w1); }
};

// One symbol: a name, optional per-face labels (2*dim faces in the order
// -x,+x,-y,+y,-z,+z), and optional integer attributes (corner values, cube
// flags and the like).
struct Symbol {
    std::string name;
    std::vector<std::string> faces;  // empty, or exactly 2*dim entries
    std::map<std::string, int> attrs;

    bool has_attr(const std::string& k) const { return attrs.count(k) != 0; }
    int attr(const std::string& k) const {
        auto it = attrs.find(k);
        if (it == attrs.end()) throw spec_error("symbol " + name + ": missing attribute " + k);
        return it->second;
    }
    int attr_or(const std::string& k, int dflt) const {
        auto it = attrs.find(k);
        return it == attrs.end() ? dflt : it->second;
    }
};

struct Alphabet {
    std::vector<Symbol> symbols;

    int size() const { return static_cast<int>(symbols.size()); }
    const Symbol& operator[](int i) const { return symbols[i]; }
    Symbol& operator[](int i) { return symbols[i]; }

    int add(const std::string& name) {
        symbols.push_back(Symbol{name, {}, {}});
        return size() - 1;
    }
    int index_of(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (symbols[i].name == name) return i;
        return -1;
    }
    int require(const std::string& name) const {
        int i = index_of(name);
        if (i < 0) throw spec_error("unknown symbol: " + name);
        return i;
    }
    void check(int dim) const {
        if (size() == 0) throw spec_error("alphabet is empty");
        if (size() > SymbolSet::kMax) throw spec_error("alphabet too large (max 128 symbols)");
        std::map<std::string, int> seen;
        for (const auto& s : symbols) {
            if (seen.count(s.name)) throw spec_error("duplicate symbol name: " + s.name);
            seen[s.name] = 1;
            if (!s.faces.empty() && static_cast<int>(s.faces.size()) != 2 * dim)
                throw spec_error("symbol " + s.name + ": face label count must be 2*dim");
        }
    }
    bool fully_face_labeled(int dim) const {
        for (const auto& s : symbols)
            if (static_cast<int>(s.faces.size()) != 2 * dim) return false;
        return true;
    }
    // Symbols whose attribute k equals v (missing attribute never matches).
    SymbolSet attr_set(const std::string& k, int v) const {
        SymbolSet out;
        for (int i = 0; i < size(); ++i) {
            auto it = symbols[i].attrs.find(k);
            if (it != symbols[i].attrs.end() && it->second == v) out.set(i);
        }
        return out;
    }
};

}  // namespace sft
