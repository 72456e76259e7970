#pragma once

#include <json.hpp>

#include "sft/asymptotics.hpp"
#include "sft/claims.hpp"
#include "sft/entropy.hpp"
#include "sft/spec_io.hpp"

namespace sft {

using Json = nlohmann::ordered_json;

// Reproducibility header carried by every artifact: tool version, spec hash,
// seed and parameters. No timestamps, so identical runs are byte-identical.
inline Json run_header(const std::string& tool_version, const std::string& spec_name,
                       uint64_t spec_hash, uint64_t seed, const Json& params) {
    Json j;
    j["tool_version"] = tool_version;
    j["spec"] = spec_name;
    j["spec_hash"] = spec_hash;
    j["seed"] = seed;
    j["params"] = params;
    return j;
}

inline Json to_json(const ShiftSpec& spec, const Pattern& p) {
    Json j;
    j["cells"] = Json::array();
    for (size_t i = 0; i < p.size(); ++i) {
        Json c;
        c["at"] = {p.support.cells[i][0], p.support.cells[i][1], p.support.cells[i][2]};
        c["sym"] = spec.alphabet[p.sym[i]].name;
        j["cells"].push_back(c);
    }
    return j;
}

inline Json to_json(const ShiftSpec& spec, const TorusConfig& t) {
    Json j;
    j["periods"] = {t.periods[0], t.periods[1], t.periods[2]};
    j["dim"] = t.dim;
    Json d = Json::array();
    for (int s : t.data) d.push_back(spec.alphabet[s].name);
    j["data"] = d;
    return j;
}

inline Json to_json(const ShiftSpec& spec, const Witness& w) {
    Json j;
    j["kind"] = w.kind == Witness::TorusPair ? "torus-pair" : "open-pair";
    j["agreement_radius"] = w.agreement_radius;
    j["certifying"] = w.certifying;
    j["p"] = to_json(spec, w.p);
    j["q"] = to_json(spec, w.q);
    if (w.kind == Witness::TorusPair) {
        j["left"] = to_json(spec, w.left_torus);
        j["right"] = to_json(spec, w.right_torus);
    } else {
        j["left"] = to_json(spec, w.left_open);
        j["right"] = to_json(spec, w.right_open);
    }
    Json diff = Json::array();
    for (const auto& c : w.differing_cells.cells) diff.push_back({c[0], c[1], c[2]});
    j["differing_cells"] = diff;
    return j;
}

inline Json to_json(const Obstruction& o) {
    Json j;
    j["kind"] = obstruction_kind_name(o.kind);
    j["swapped"] = o.swapped;
    j["cell"] = {o.cell[0], o.cell[1], o.cell[2]};
    if (o.kind == Obstruction::WormColumn) {
        j["band"] = {o.band_lo, o.band_hi};
        j["row"] = o.row;
    } else {
        j["z_range"] = {o.z_lo, o.z_hi};
    }
    j["note"] = o.note;
    return j;
}

inline Json to_json(const ShiftSpec& spec, const ExchangeabilityGraph& g,
                    bool include_witnesses = true) {
    Json j;
    j["vertex_count"] = g.vertices.size();
    j["vertices_capped"] = g.vertices_capped;
    j["pairs_sampled"] = g.pairs_sampled;
    j["pairs_classified"] = g.pairs_classified;
    Json verts = Json::array();
    for (const auto& v : g.vertices) verts.push_back(to_json(spec, v));
    j["vertices"] = verts;
    Json edges = Json::array();
    for (const auto& e : g.edges) {
        Json je;
        je["a"] = e.a;
        je["b"] = e.b;
        if (include_witnesses) je["witness"] = to_json(spec, e.witness);
        edges.push_back(je);
    }
    j["edges"] = edges;
    Json obs = Json::array();
    for (const auto& o : g.obstructed) {
        Json jo;
        jo["a"] = o.a;
        jo["b"] = o.b;
        jo["obstruction"] = to_json(o.obstruction);
        obs.push_back(jo);
    }
    j["obstructed"] = obs;
    Json unk = Json::array();
    for (const auto& [a, b] : g.unknown) unk.push_back({a, b});
    j["unknown"] = unk;
    auto comp = g.components();
    j["components"] = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    return j;
}

inline std::string to_dot(const ExchangeabilityGraph& g) {
    std::ostringstream s;
    s << "graph exchangeability {\n";
    for (size_t i = 0; i < g.vertices.size(); ++i) s << "  v" << i << ";\n";
    for (const auto& e : g.edges) s << "  v" << e.a << " -- v" << e.b << " [color=blue];\n";
    for (const auto& o : g.obstructed)
        s << "  v" << o.a << " -- v" << o.b << " [color=red,style=dashed,label=\""
          << obstruction_kind_name(o.obstruction.kind) << "\"];\n";
    s << "}\n";
    return s.str();
}

inline Json to_json(const BceProfile& prof) {
    Json j = Json::array();
    for (const auto& r : prof.records) {
        Json rec;
        rec["support_size"] = r.support.size();
        rec["vertices"] = r.vertex_count;
        rec["components"] = r.component_count;
        rec["max_diameter"] = r.max_diameter;
        rec["capped"] = r.capped;
        rec["pairs_sampled"] = r.pairs_sampled;
        j.push_back(rec);
    }
    return j;
}

inline Json to_json(const EntropyEstimate& e) {
    Json j;
    j["method"] = e.method;
    j["upper_nats"] = e.upper;
    if (e.lower > -1e300) j["lower_nats"] = e.lower;
    if (e.n) j["n"] = e.n;
    if (e.w) j["w"] = e.w;
    j["m"] = e.m;
    if (e.count > 0) j["count"] = e.count.str();
    j["exact"] = e.exact;
    if (e.iterations) j["iterations"] = e.iterations;
    if (e.states) j["states"] = e.states;
    return j;
}

inline Json to_json(const ClaimReport& r) {
    Json j;
    j["claim"] = r.claim;
    j["verdict"] = verdict_name(r.verdict);
    j["checked"] = r.checked;
    j["failed"] = r.failed;
    Json params;
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

}  // namespace sft
