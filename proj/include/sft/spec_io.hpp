#pragma once

#include <fstream>
#include <sstream>

#include "sft/shift_spec.hpp"

namespace sft {

// Declarative, versioned text formats. Files written by save_* parse back to
// equal values, and canonical files survive a load/save round trip byte for
// byte (the savers emit sections in a fixed order with single spaces).

inline std::string coord_token(const Coord& c, int dim) {
    std::string s = "(";
    for (int i = 0; i < dim; ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
    }
    return s + ")";
}

inline Coord parse_coord_token(const std::string& tok, int dim, const char* what) {
    if (tok.size() < 2 || tok.front() != '(' )
        throw spec_error(std::string(what) + ": bad cell token " + tok);
    Coord c;
    std::string body = tok.substr(1);
    size_t eq = body.find(')');
    if (eq == std::string::npos) throw spec_error(std::string(what) + ": bad cell token " + tok);
    body = body.substr(0, eq);
    std::stringstream ss(body);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= dim) throw spec_error(std::string(what) + ": too many coordinates in " + tok);
        c[i++] = std::stoi(part);
    }
    if (i != dim) throw spec_error(std::string(what) + ": expected " + std::to_string(dim) +
                                   " coordinates in " + tok);
    return c;
}

// ---- shift-spec format -------------------------------------------------------

inline std::string save_spec_text(const ShiftSpec& spec) {
    std::ostringstream out;
    out << "sftspec 1\n";
    out << "name " << spec.name << "\n";
    out << "dim " << spec.dim << "\n";
    out << "radius";
    for (int i = 0; i < spec.dim; ++i) out << " " << spec.radius[i];
    out << "\n";
    out << "symbols " << spec.alphabet.size() << "\n";
    for (const auto& s : spec.alphabet.symbols) {
        out << "sym " << s.name;
        if (!s.faces.empty()) {
            out << " faces";
            for (const auto& f : s.faces) out << " " << f;
        }
        out << "\n";
    }
    for (const auto& s : spec.alphabet.symbols)
        for (const auto& [k, v] : s.attrs) out << "attr " << s.name << " " << k << " " << v << "\n";

    // Name every symbol set used by class rules; reuse declared names.
    std::map<std::string, SymbolSet> sets = spec.sets;
    auto name_of = [&](const SymbolSet& ss) -> std::string {
        if (ss.count() == 1) return spec.alphabet[ss.first()].name;  // singleton: symbol name
        for (const auto& [n, v] : sets)
            if (v == ss) return n;
        int k = 0;
        std::string n;
        do {
            n = "S" + std::to_string(k++);
        } while (sets.count(n));
        sets[n] = ss;
        return n;
    };
    std::vector<std::string> rule_lines;
    for (const auto& r : spec.class_rules) {
        std::string line = "forbidclass " + (r.tag.empty() ? std::string("-") : r.tag);
        for (size_t i = 0; i < r.arity(); ++i)
            line += " " + coord_token(r.at[i], spec.dim) + "=" + name_of(r.in[i]);
        rule_lines.push_back(line);
    }
    for (const auto& [n, ss] : sets) {
        out << "set " << n;
        for (int s = ss.first(); s >= 0; s = ss.next(s)) out << " " << spec.alphabet[s].name;
        out << "\n";
    }
    for (const auto& p : spec.forbidden) {
        out << "forbid";
        for (size_t i = 0; i < p.size(); ++i)
            out << " " << coord_token(p.support.cells[i], spec.dim) << "="
                << spec.alphabet[p.sym[i]].name;
        out << "\n";
    }
    for (const auto& l : rule_lines) out << l << "\n";
    if (!spec.validator.empty()) out << "validator " << spec.validator << "\n";
    if (spec.wang_mode) out << "wang\n";
    out << "end\n";
    return out.str();
}

inline ShiftSpec load_spec_text(const std::string& text) {
    ShiftSpec spec;
    std::istringstream in(text);
    std::string line;
    bool have_header = false, have_end = false;
    auto cellspec = [&](const std::string& tok, Coord& c, std::string& ref) {
        size_t eq = tok.find(")=");
        if (eq == std::string::npos) throw spec_error("spec file: bad cellspec " + tok);
        c = parse_coord_token(tok.substr(0, eq + 1), spec.dim, "spec file");
        ref = tok.substr(eq + 2);
    };
    auto set_of = [&](const std::string& ref) -> SymbolSet {
        auto it = spec.sets.find(ref);
        if (it != spec.sets.end()) return it->second;
        int s = spec.alphabet.index_of(ref);
        if (s < 0) throw spec_error("spec file: unknown set or symbol " + ref);
        return SymbolSet::single(s);
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "sftspec") {
            int ver;
            ls >> ver;
            if (ver != 1) throw spec_error("spec file: unsupported version");
            have_header = true;
        } else if (!have_header) {
            throw spec_error("spec file: missing sftspec header");
        } else if (kw == "name") {
            ls >> spec.name;
        } else if (kw == "dim") {
            ls >> spec.dim;
            if (spec.dim < 1 || spec.dim > 3) throw spec_error("spec file: dim must be 1..3");
        } else if (kw == "radius") {
            for (int i = 0; i < spec.dim; ++i) ls >> spec.radius[i];
        } else if (kw == "symbols") {
            int n;
            ls >> n;
            spec.alphabet.symbols.reserve(n);
        } else if (kw == "sym") {
            std::string name;
            ls >> name;
            int i = spec.alphabet.add(name);
            std::string tok;
            if (ls >> tok) {
                if (tok != "faces") throw spec_error("spec file: expected 'faces'");
                for (int f = 0; f < 2 * spec.dim; ++f) {
                    std::string fl;
                    if (!(ls >> fl)) throw spec_error("spec file: incomplete faces");
                    spec.alphabet[i].faces.push_back(fl);
                }
            }
        } else if (kw == "attr") {
            std::string sname, key;
            int v;
            ls >> sname >> key >> v;
            spec.alphabet[spec.alphabet.require(sname)].attrs[key] = v;
        } else if (kw == "set") {
            std::string name, s;
            ls >> name;
            SymbolSet ss;
            while (ls >> s) ss.set(spec.alphabet.require(s));
            spec.sets[name] = ss;
        } else if (kw == "forbid") {
            std::string tok;
            std::vector<std::pair<Coord, int>> cells;
            while (ls >> tok) {
                Coord c;
                std::string ref;
                cellspec(tok, c, ref);
                cells.emplace_back(c, spec.alphabet.require(ref));
            }
            std::sort(cells.begin(), cells.end());
            std::vector<Coord> cs;
            std::vector<int> sym;
            for (auto& [c, s] : cells) {
                cs.push_back(c);
                sym.push_back(s);
            }
            spec.add_forbidden(Pattern(Support{cs}, sym));
        } else if (kw == "forbidclass") {
            std::string tag, tok;
            ls >> tag;
            Rule r;
            r.tag = (tag == "-") ? "" : tag;
            while (ls >> tok) {
                Coord c;
                std::string ref;
                cellspec(tok, c, ref);
                r.at.push_back(c);
                r.in.push_back(set_of(ref));
            }
            spec.add_class_rule(std::move(r));
        } else if (kw == "validator") {
            ls >> spec.validator;
        } else if (kw == "wang") {
            spec.wang_mode = true;
        } else if (kw == "end") {
            have_end = true;
            break;
        } else {
            throw spec_error("spec file: unknown keyword " + kw);
        }
    }
    if (!have_end) throw spec_error("spec file: missing end");
    spec.alphabet.check(spec.dim);
    return spec;
}

// ---- pattern format ----------------------------------------------------------

inline std::string save_pattern_text(const Pattern& p, const ShiftSpec& spec) {
    std::ostringstream out;
    out << "sftpattern 1\n";
    out << "dim " << spec.dim << "\n";
    out << "cells " << p.size() << "\n";
    for (size_t i = 0; i < p.size(); ++i)
        out << "cell " << coord_token(p.support.cells[i], spec.dim) << "="
            << spec.alphabet[p.sym[i]].name << "\n";
    out << "end\n";
    return out.str();
}

inline Pattern load_pattern_text(const std::string& text, const ShiftSpec& spec) {
    std::istringstream in(text);
    std::string line;
    int dim = spec.dim;
    std::vector<std::pair<Coord, int>> cells;
    bool have_end = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "sftpattern") {
            int ver;
            ls >> ver;
            if (ver != 1) throw spec_error("pattern file: unsupported version");
        } else if (kw == "dim") {
            ls >> dim;
            if (dim != spec.dim) throw spec_error("pattern file: dimension mismatch");
        } else if (kw == "cells") {
            // count line, informative only
        } else if (kw == "cell") {
            std::string tok;
            ls >> tok;
            size_t eq = tok.find(")=");
            if (eq == std::string::npos) throw spec_error("pattern file: bad cell " + tok);
            Coord c = parse_coord_token(tok.substr(0, eq + 1), dim, "pattern file");
            cells.emplace_back(c, spec.alphabet.require(tok.substr(eq + 2)));
        } else if (kw == "end") {
            have_end = true;
            break;
        } else {
            throw spec_error("pattern file: unknown keyword " + kw);
        }
    }
    if (!have_end) throw spec_error("pattern file: missing end");
    std::sort(cells.begin(), cells.end());
    std::vector<Coord> cs;
    std::vector<int> sym;
    for (auto& [c, s] : cells) {
        cs.push_back(c);
        sym.push_back(s);
    }
    return Pattern(Support{cs}, sym);
}

// ---- torus format ------------------------------------------------------------

inline std::string save_torus_text(const TorusConfig& t, const ShiftSpec& spec) {
    std::ostringstream out;
    out << "sfttorus 1\n";
    out << "dim " << t.dim << "\n";
    out << "periods";
    for (int i = 0; i < t.dim; ++i) out << " " << t.periods[i];
    out << "\n";
    out << "data";
    for (int s : t.data) out << " " << spec.alphabet[s].name;
    out << "\n";
    out << "end\n";
    return out.str();
}

inline TorusConfig load_torus_text(const std::string& text, const ShiftSpec& spec) {
    std::istringstream in(text);
    std::string line;
    TorusConfig t;
    bool have_end = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "sfttorus") {
            int ver;
            ls >> ver;
            if (ver != 1) throw spec_error("torus file: unsupported version");
        } else if (kw == "dim") {
            ls >> t.dim;
        } else if (kw == "periods") {
            for (int i = 0; i < t.dim; ++i) ls >> t.periods[i];
        } else if (kw == "data") {
            std::string tok;
            while (ls >> tok) t.data.push_back(spec.alphabet.require(tok));
        } else if (kw == "end") {
            have_end = true;
            break;
        } else {
            throw spec_error("torus file: unknown keyword " + kw);
        }
    }
    if (!have_end) throw spec_error("torus file: missing end");
    if (static_cast<int>(t.data.size()) != t.cells())
        throw spec_error("torus file: data size does not match periods");
    return t;
}

// ---- small file helpers ------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw spec_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Atomic-ish write: temp file then rename.
inline void write_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw spec_error("cannot write " + tmp);
        f << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw spec_error("cannot rename to " + path);
}

inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace sft
