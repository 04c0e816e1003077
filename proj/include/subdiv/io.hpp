#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "subdiv/complex.hpp"
#include "subdiv/marking.hpp"
#include "subdiv/rules.hpp"

namespace subdiv {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Text output. Floats are written with 17 significant digits so hashes of
// serialized results are stable across runs.
// ---------------------------------------------------------------------------

namespace detail {

inline void dump_to(std::string& out, const json& j, int indent, int depth) {
    auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
    case json::value_t::number_float: {
        const double x = j.get<double>();
        if (!std::isfinite(x)) {
            out += "null";
            return;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        std::string s = buf;
        if (s.find_first_of(".eE") == std::string::npos) s += ".0";
        out += s;
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // arrays of scalars stay on one line
        bool flat = true;
        for (const auto& x : j) flat = flat && !x.is_structured();
        out += '[';
        bool first = true;
        for (const auto& x : j) {
            if (!first) out += flat && indent >= 0 ? ", " : ",";
            first = false;
            if (!flat) newline(depth + 1);
            dump_to(out, x, indent, depth + 1);
        }
        if (!flat) newline(depth);
        out += ']';
        return;
    }
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ',';
            first = false;
            newline(depth + 1);
            out += json(it.key()).dump();
            out += indent >= 0 ? ": " : ":";
            dump_to(out, it.value(), indent, depth + 1);
        }
        newline(depth);
        out += '}';
        return;
    }
    default:
        out += j.dump();
    }
}

} // namespace detail

[[nodiscard]] inline std::string dump_json(const json& j, int indent = 2) {
    std::string out;
    detail::dump_to(out, j, indent, 0);
    return out;
}

[[nodiscard]] inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::IoError, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::IoError, "cannot write '" + path + "'");
    out << text;
    if (!out) fail(ErrorKind::IoError, "write to '" + path + "' failed");
}

[[nodiscard]] inline json parse_json(const std::string& text, const std::string& what = "document") {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidDocument, what + " is not valid JSON: " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Document helpers
// ---------------------------------------------------------------------------

namespace detail {

inline void only_fields(const json& j, std::initializer_list<const char*> allowed, const std::string& what) {
    if (!j.is_object()) fail(ErrorKind::InvalidDocument, what + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) fail(ErrorKind::InvalidDocument, what + " has unknown field '" + it.key() + "'");
    }
}

inline const json& need(const json& j, const char* key, const std::string& what) {
    auto it = j.find(key);
    if (it == j.end()) fail(ErrorKind::InvalidDocument, what + " is missing field '" + key + "'");
    return *it;
}

inline std::int64_t as_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) fail(ErrorKind::InvalidDocument, what + " must be an integer");
    return j.get<std::int64_t>();
}

inline std::uint32_t as_index(const json& j, const std::string& what) {
    const auto v = as_int(j, what);
    if (v < 0 || v > 0x7fffffff) fail(ErrorKind::InvalidDocument, what + " must be a non-negative index");
    return static_cast<std::uint32_t>(v);
}

inline std::string as_string(const json& j, const std::string& what) {
    if (!j.is_string()) fail(ErrorKind::InvalidDocument, what + " must be a string");
    return j.get<std::string>();
}

inline const json& as_array(const json& j, const std::string& what) {
    if (!j.is_array()) fail(ErrorKind::InvalidDocument, what + " must be an array");
    return j;
}

inline std::vector<EdgeId> edge_list(const json& j, const std::string& what) {
    std::vector<EdgeId> out;
    for (const auto& x : as_array(j, what)) out.push_back(as_index(x, what + " entry"));
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Complexes and markings
// ---------------------------------------------------------------------------

// Face entries are 1-based signed edge indices: +k walks edge k-1 from a to b,
// -k walks it from b to a.
[[nodiscard]] inline json complex_to_json(const Complex2D& c) {
    json j;
    json verts = json::array();
    for (VertexId v = 0; v < c.num_vertices(); ++v) verts.push_back(v);
    j["vertices"] = std::move(verts);
    json edges = json::array();
    for (const auto& e : c.edges()) edges.push_back({e.a, e.b});
    j["edges"] = std::move(edges);
    json faces = json::array();
    for (const auto& f : c.faces()) {
        json fj = json::array();
        for (const auto& s : f.boundary) {
            const auto k = static_cast<std::int64_t>(s.edge) + 1;
            fj.push_back(s.reversed ? -k : k);
        }
        faces.push_back(std::move(fj));
    }
    j["faces"] = std::move(faces);
    if (c.has_tile_types()) j["tile_types"] = c.tile_types();
    return j;
}

using Marking = std::variant<std::monostate, RingMarking, QuadMarking>;

struct ComplexDocument {
    Complex2D complex;
    Marking marking;
};

[[nodiscard]] inline Complex2D complex_from_json(const json& j, const std::string& what = "complex") {
    detail::only_fields(j, {"vertices", "edges", "faces", "tile_types", "markings"}, what);
    const auto& vs = detail::as_array(detail::need(j, "vertices", what), what + ".vertices");
    std::set<std::int64_t> ids;
    for (const auto& v : vs) ids.insert(detail::as_int(v, what + ".vertices entry"));
    if (ids.size() != vs.size()) fail(ErrorKind::InvalidDocument, what + ".vertices has duplicates");
    const auto nv = vs.size();
    if (!ids.empty() && (*ids.begin() != 0 || *ids.rbegin() != static_cast<std::int64_t>(nv) - 1))
        fail(ErrorKind::InvalidDocument, what + ".vertices must be 0..V-1");

    std::vector<Edge> edges;
    for (const auto& e : detail::as_array(detail::need(j, "edges", what), what + ".edges")) {
        if (!e.is_array() || e.size() != 2) fail(ErrorKind::InvalidDocument, what + ".edges entries must be [v, w] pairs");
        const auto a = detail::as_index(e[0], "edge endpoint"), b = detail::as_index(e[1], "edge endpoint");
        if (a >= nv || b >= nv)
            fail(ErrorKind::UnknownVertex, what + ": edge " + std::to_string(edges.size()) + " cites a missing vertex");
        edges.push_back({a, b});
    }
    std::vector<Face> faces;
    for (const auto& f : detail::as_array(detail::need(j, "faces", what), what + ".faces")) {
        Face face;
        for (const auto& x : detail::as_array(f, what + ".faces entry")) {
            const auto k = detail::as_int(x, "face edge index");
            if (k == 0) fail(ErrorKind::InvalidDocument, what + ": face edge indices are 1-based and signed");
            const auto idx = std::llabs(k) - 1;
            if (idx >= static_cast<std::int64_t>(edges.size()))
                fail(ErrorKind::DanglingEdge, what + ": face " + std::to_string(faces.size()) + " cites missing edge " +
                                                  std::to_string(idx));
            face.boundary.push_back({static_cast<EdgeId>(idx), k < 0});
        }
        faces.push_back(std::move(face));
    }
    std::vector<std::string> types;
    if (auto it = j.find("tile_types"); it != j.end()) {
        for (const auto& t : detail::as_array(*it, what + ".tile_types")) types.push_back(detail::as_string(t, "tile type"));
        if (types.size() != faces.size())
            fail(ErrorKind::InvalidDocument, what + ".tile_types must name every face");
    }
    return Complex2D::build(nv, std::move(edges), std::move(faces), std::move(types));
}

[[nodiscard]] inline json marking_to_json(const Marking& m) {
    if (const auto* r = std::get_if<RingMarking>(&m)) return {{"ring", {{"inner", r->inner}, {"outer", r->outer}}}};
    if (const auto* q = std::get_if<QuadMarking>(&m))
        return {{"quad", {{"top", q->top()}, {"right", q->right()}, {"bottom", q->bottom()}, {"left", q->left()}}}};
    return nullptr;
}

[[nodiscard]] inline Marking marking_from_json(const Complex2D& c, const json& j) {
    detail::only_fields(j, {"ring", "quad"}, "markings");
    if (j.size() != 1) fail(ErrorKind::InvalidDocument, "markings must hold exactly one of 'ring' or 'quad'");
    if (auto it = j.find("ring"); it != j.end()) {
        detail::only_fields(*it, {"inner", "outer"}, "markings.ring");
        return make_ring(c, detail::edge_list(detail::need(*it, "inner", "ring"), "ring.inner"),
                         detail::edge_list(detail::need(*it, "outer", "ring"), "ring.outer"));
    }
    const auto& q = j.at("quad");
    detail::only_fields(q, {"top", "right", "bottom", "left"}, "markings.quad");
    return make_quad_from_arcs(c, detail::edge_list(detail::need(q, "top", "quad"), "quad.top"),
                               detail::edge_list(detail::need(q, "bottom", "quad"), "quad.bottom"),
                               detail::edge_list(detail::need(q, "left", "quad"), "quad.left"),
                               detail::edge_list(detail::need(q, "right", "quad"), "quad.right"));
}

[[nodiscard]] inline ComplexDocument document_from_json(const json& j) {
    ComplexDocument d;
    d.complex = complex_from_json(j);
    if (auto it = j.find("markings"); it != j.end() && !it->is_null()) d.marking = marking_from_json(d.complex, *it);
    return d;
}

[[nodiscard]] inline json document_to_json(const Complex2D& c, const Marking& m = {}) {
    auto j = complex_to_json(c);
    if (!std::holds_alternative<std::monostate>(m)) j["markings"] = marking_to_json(m);
    return j;
}

[[nodiscard]] inline ComplexDocument load_document(const std::string& path) {
    return document_from_json(parse_json(read_file(path), path));
}

// Subdivides the complex `levels` times and carries its marking along:
// ring cycles through edge descendants, quad corners by their preserved ids.
[[nodiscard]] inline ComplexDocument subdivide_document(const ComplexDocument& d, const SubdivisionRule& r, int levels) {
    auto tr = subdivide_n_traced(d.complex, r, levels);
    ComplexDocument out;
    out.complex = tr.complex;
    if (const auto* ring = std::get_if<RingMarking>(&d.marking)) {
        auto lift = [&](const std::vector<EdgeId>& es) {
            std::vector<EdgeId> o;
            for (auto e : es) o.insert(o.end(), tr.edge_descendants[e].begin(), tr.edge_descendants[e].end());
            return o;
        };
        out.marking = make_ring(tr.complex, lift(ring->inner), lift(ring->outer));
    } else if (const auto* q = std::get_if<QuadMarking>(&d.marking)) {
        out.marking = make_quad(tr.complex, q->corners);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

[[nodiscard]] inline json rule_to_json(const SubdivisionRule& r) {
    json j;
    j["name"] = r.name;
    json et = json::object();
    for (const auto& [name, e] : r.edge_types) et[name] = {{"splits_into", e.splits_into}};
    j["edge_types"] = std::move(et);
    json tt = json::object();
    for (const auto& [name, t] : r.tiles) {
        json tj;
        tj["boundary"] = t.boundary;
        tj["pattern"] = complex_to_json(t.pattern);
        tj["boundary_map"] = t.boundary_map;
        if (t.base_corner != 0) tj["base_corner"] = t.base_corner;
        tt[name] = std::move(tj);
    }
    j["tile_types"] = std::move(tt);
    return j;
}

[[nodiscard]] inline SubdivisionRule rule_from_json(const json& j) {
    detail::only_fields(j, {"name", "edge_types", "tile_types"}, "rule");
    SubdivisionRule r;
    r.name = detail::as_string(detail::need(j, "name", "rule"), "rule.name");
    const auto& et = detail::need(j, "edge_types", "rule");
    if (!et.is_object()) fail(ErrorKind::InvalidDocument, "rule.edge_types must be an object");
    for (auto it = et.begin(); it != et.end(); ++it) {
        const auto what = "edge type '" + it.key() + "'";
        detail::only_fields(it.value(), {"splits_into"}, what);
        EdgeType e{it.key(), {}};
        for (const auto& s : detail::as_array(detail::need(it.value(), "splits_into", what), what))
            e.splits_into.push_back(detail::as_string(s, what + " split"));
        if (e.splits_into.empty()) fail(ErrorKind::InvalidDocument, what + " must split into at least one edge");
        r.edge_types[it.key()] = std::move(e);
    }
    const auto& tt = detail::need(j, "tile_types", "rule");
    if (!tt.is_object()) fail(ErrorKind::InvalidDocument, "rule.tile_types must be an object");
    for (auto it = tt.begin(); it != tt.end(); ++it) {
        const auto what = "tile type '" + it.key() + "'";
        const auto& tj = it.value();
        detail::only_fields(tj, {"boundary", "pattern", "boundary_map", "base_corner"}, what);
        TilePattern t;
        t.name = it.key();
        for (const auto& b : detail::as_array(detail::need(tj, "boundary", what), what + ".boundary"))
            t.boundary.push_back(detail::as_string(b, "edge type"));
        const auto& pj = detail::need(tj, "pattern", what);
        if (pj.contains("markings")) fail(ErrorKind::InvalidDocument, what + ".pattern cannot carry markings");
        t.pattern = complex_from_json(pj, what + ".pattern");
        for (const auto& side : detail::as_array(detail::need(tj, "boundary_map", what), what + ".boundary_map")) {
            auto edges = detail::edge_list(side, what + ".boundary_map");
            for (auto e : edges)
                if (e >= t.pattern.num_edges()) fail(ErrorKind::EdgeMismatch, what + ".boundary_map cites a missing edge");
            t.boundary_map.push_back(std::move(edges));
        }
        if (auto bc = tj.find("base_corner"); bc != tj.end()) t.base_corner = detail::as_index(*bc, what + ".base_corner");
        r.tiles[it.key()] = std::move(t);
    }
    return validate_rule(std::move(r));
}

// A built-in name or a path to a rule file.
[[nodiscard]] inline SubdivisionRule resolve_rule(const std::string& name_or_path) {
    for (const auto& n : builtin_rule_names())
        if (n == name_or_path) return builtin_rule(n);
    return rule_from_json(parse_json(read_file(name_or_path), name_or_path));
}

} // namespace subdiv
