#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subdiv/complex.hpp"

namespace subdiv {

// ---------------------------------------------------------------------------
// Rule types
// ---------------------------------------------------------------------------

struct EdgeType {
    std::string name;
    std::vector<std::string> splits_into; // sub-edge types, listed along the walking direction
};

// Replacement pattern for one tile type. The model polygon has k sides; side j
// runs from corner j to corner j+1 and has edge type boundary[j]. A face of
// this type maps its boundary position p onto model side (p + base_corner) % k.
struct TilePattern {
    std::string name;
    std::vector<std::string> boundary;
    Complex2D pattern;                               // faces carry tile types
    std::vector<std::vector<EdgeId>> boundary_map;   // side j -> pattern edges, corner j to corner j+1
    std::uint32_t base_corner = 0;

    // derived during validation
    std::vector<std::vector<VertexId>> side_vertices; // side j -> pattern vertices along the side
    std::vector<bool> on_boundary;                    // per pattern vertex
    std::vector<bool> edge_on_boundary;               // per pattern edge

    [[nodiscard]] std::size_t sides() const noexcept { return boundary.size(); }
};

struct SubdivisionRule {
    std::string name;
    std::map<std::string, EdgeType> edge_types;
    std::map<std::string, TilePattern> tiles;

    [[nodiscard]] const TilePattern& tile(const std::string& type) const {
        auto it = tiles.find(type);
        if (it == tiles.end()) fail(ErrorKind::MissingTileType, "rule '" + name + "' has no tile type '" + type + "'");
        return it->second;
    }
    [[nodiscard]] const std::vector<std::string>& splits(const std::string& edge_type) const {
        auto it = edge_types.find(edge_type);
        if (it == edge_types.end()) fail(ErrorKind::UnknownEdgeType, "edge type '" + edge_type + "'");
        return it->second.splits_into;
    }
    // Edge type of boundary position p of a face of the given type.
    [[nodiscard]] const std::string& side_type(const TilePattern& t, std::size_t p) const {
        return t.boundary[(p + t.base_corner) % t.sides()];
    }
};

namespace detail {

inline std::vector<std::string> reversed(std::vector<std::string> v) {
    std::reverse(v.begin(), v.end());
    return v;
}

} // namespace detail

// Validates closure, edge-type consistency and pattern geometry; fills the
// derived fields. Throws UnknownTileType, UnknownEdgeType, EdgeMismatch, NotADisk.
inline SubdivisionRule validate_rule(SubdivisionRule rule) {
    for (const auto& [name, et] : rule.edge_types)
        for (const auto& s : et.splits_into)
            if (!rule.edge_types.count(s))
                fail(ErrorKind::UnknownEdgeType, "edge type '" + name + "' splits into unknown type '" + s + "'");
    if (rule.tiles.empty()) fail(ErrorKind::InvalidDocument, "rule has no tile types");

    for (auto& [name, t] : rule.tiles) {
        const auto k = t.sides();
        if (k < 3) fail(ErrorKind::InvalidDocument, "tile type '" + name + "' needs at least 3 sides");
        if (t.base_corner >= k) fail(ErrorKind::InvalidDocument, "tile type '" + name + "' base_corner out of range");
        for (const auto& b : t.boundary)
            if (!rule.edge_types.count(b))
                fail(ErrorKind::UnknownEdgeType, "tile type '" + name + "' uses unknown edge type '" + b + "'");
        const auto& p = t.pattern;
        if (!p.has_tile_types())
            fail(ErrorKind::InvalidDocument, "pattern of '" + name + "' must give tile types");
        if (!is_disk(p)) fail(ErrorKind::NotADisk, "pattern of tile type '" + name + "' is not a disk");
        for (FaceId f = 0; f < p.num_faces(); ++f) {
            const auto& ft = *p.tile_type(f);
            auto it = rule.tiles.find(ft);
            if (it == rule.tiles.end())
                fail(ErrorKind::UnknownTileType, "pattern of '" + name + "' cites undefined tile type '" + ft + "'");
            if (it->second.sides() != p.face(f).boundary.size())
                fail(ErrorKind::EdgeMismatch, "pattern face of type '" + ft + "' has the wrong number of sides");
        }
        if (t.boundary_map.size() != k)
            fail(ErrorKind::EdgeMismatch, "tile type '" + name + "' boundary_map must list every side");

        t.edge_on_boundary.assign(p.num_edges(), false);
        t.on_boundary.assign(p.num_vertices(), false);
        t.side_vertices.assign(k, {});
        std::size_t covered = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const auto& side = t.boundary_map[j];
            const auto& want = rule.splits(t.boundary[j]);
            if (side.size() != want.size())
                fail(ErrorKind::EdgeMismatch, "tile type '" + name + "' side " + std::to_string(j) + " has " +
                                                  std::to_string(side.size()) + " sub-edges but edge type '" +
                                                  t.boundary[j] + "' splits into " + std::to_string(want.size()));
            for (std::size_t i = 0; i < side.size(); ++i) {
                const auto e = side[i];
                if (e >= p.num_edges() || !p.is_boundary_edge(e))
                    fail(ErrorKind::EdgeMismatch, "boundary_map of '" + name + "' cites a non-boundary edge");
                if (t.edge_on_boundary[e]) fail(ErrorKind::EdgeMismatch, "boundary_map of '" + name + "' repeats an edge");
                t.edge_on_boundary[e] = true;
                ++covered;
                // the owning face must walk the edge along the side
                const auto f = p.edge_faces(e)[0];
                const auto pos = p.position_in_face(f, e);
                const auto s = p.face(f).boundary[pos];
                if (i == 0) t.side_vertices[j].push_back(p.tail(s));
                else if (t.side_vertices[j].back() != p.tail(s))
                    fail(ErrorKind::EdgeMismatch, "side " + std::to_string(j) + " of '" + name +
                                                      "' is not a path walked in the pattern's orientation");
                t.side_vertices[j].push_back(p.head(s));
                const auto& ft = rule.tiles.at(*p.tile_type(f));
                if (rule.side_type(ft, pos) != want[i])
                    fail(ErrorKind::EdgeMismatch, "sub-edge " + std::to_string(i) + " on side " + std::to_string(j) +
                                                      " of '" + name + "' has type '" + rule.side_type(ft, pos) +
                                                      "', expected '" + want[i] + "'");
            }
        }
        for (std::size_t j = 0; j < k; ++j)
            if (t.side_vertices[j].back() != t.side_vertices[(j + 1) % k].front())
                fail(ErrorKind::EdgeMismatch, "sides of '" + name + "' do not meet at corners");
        std::size_t boundary_edges = 0;
        for (EdgeId e = 0; e < p.num_edges(); ++e) boundary_edges += p.is_boundary_edge(e) ? 1 : 0;
        if (covered != boundary_edges) fail(ErrorKind::EdgeMismatch, "boundary_map of '" + name + "' misses boundary edges");
        for (const auto& sv : t.side_vertices)
            for (auto v : sv) t.on_boundary[v] = true;

        // Interior pattern edges must glue consistently at the next level.
        for (EdgeId e = 0; e < p.num_edges(); ++e) {
            const auto& fs = p.edge_faces(e);
            if (fs.size() != 2) continue;
            std::vector<std::string> seq[2];
            for (int i = 0; i < 2; ++i) {
                const auto pos = p.position_in_face(fs[static_cast<std::size_t>(i)], e);
                const auto& ft = rule.tiles.at(*p.tile_type(fs[static_cast<std::size_t>(i)]));
                seq[i] = rule.splits(rule.side_type(ft, pos));
                if (p.face(fs[static_cast<std::size_t>(i)]).boundary[pos].reversed) seq[i] = detail::reversed(seq[i]);
            }
            if (seq[0] != seq[1])
                fail(ErrorKind::EdgeMismatch, "interior edge " + std::to_string(e) + " of '" + name +
                                                  "' is split inconsistently by its two faces");
        }
    }
    return rule;
}

// Pattern helper: polygons on pattern vertices, plus the vertex path of each side.
[[nodiscard]] inline TilePattern make_pattern(std::string name, std::vector<std::string> boundary,
                                              std::size_t num_vertices,
                                              const std::vector<std::vector<VertexId>>& polygons,
                                              std::vector<std::string> face_types,
                                              const std::vector<std::vector<VertexId>>& side_paths) {
    TilePattern t;
    t.name = std::move(name);
    t.boundary = std::move(boundary);
    t.pattern = Complex2D::from_polygons(num_vertices, polygons, std::move(face_types));
    for (const auto& path : side_paths) {
        std::vector<EdgeId> side;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            EdgeId found = kNone;
            for (auto e : t.pattern.vertex_edges(path[i]))
                if (t.pattern.other_end(e, path[i]) == path[i + 1]) found = e;
            if (found == kNone) fail(ErrorKind::EdgeMismatch, "side path is not a pattern edge path");
            side.push_back(found);
        }
        t.boundary_map.push_back(std::move(side));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Built-in rules
// ---------------------------------------------------------------------------

[[nodiscard]] inline SubdivisionRule builtin_barycentric() {
    SubdivisionRule r;
    r.name = "barycentric";
    r.edge_types["e"] = {"e", {"e", "e"}};
    // corners 0,1,2; midpoints 3 (0-1), 4 (1-2), 5 (2-0); barycenter 6
    r.tiles["T"] = make_pattern("T", {"e", "e", "e"}, 7,
                                {{0, 3, 6}, {3, 1, 6}, {1, 4, 6}, {4, 2, 6}, {2, 5, 6}, {5, 0, 6}},
                                std::vector<std::string>(6, "T"), {{0, 3, 1}, {1, 4, 2}, {2, 5, 0}});
    return validate_rule(std::move(r));
}

[[nodiscard]] inline SubdivisionRule builtin_hexagonal() {
    SubdivisionRule r;
    r.name = "hexagonal";
    r.edge_types["e"] = {"e", {"e", "e"}};
    r.tiles["T"] = make_pattern("T", {"e", "e", "e"}, 6, {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}, {3, 4, 5}},
                                std::vector<std::string>(4, "T"), {{0, 3, 1}, {1, 4, 2}, {2, 5, 0}});
    return validate_rule(std::move(r));
}

[[nodiscard]] inline std::vector<std::string> builtin_rule_names() { return {"barycentric", "hexagonal"}; }

[[nodiscard]] inline SubdivisionRule builtin_rule(const std::string& name) {
    if (name == "barycentric") return builtin_barycentric();
    if (name == "hexagonal") return builtin_hexagonal();
    fail(ErrorKind::InvalidArgument, "no built-in rule named '" + name + "'");
}

// ---------------------------------------------------------------------------
// Subdivision
// ---------------------------------------------------------------------------

// Result of one subdivision with provenance. Old vertex ids are kept; new
// vertices, edges and faces are numbered in face-iteration order.
struct SubdivisionStep {
    Complex2D complex;
    std::vector<FaceId> face_parent;               // new face -> old face
    std::vector<std::vector<EdgeId>> edge_children; // old edge -> sub-edges, in a -> b order
};

[[nodiscard]] inline SubdivisionStep subdivide_traced(const Complex2D& c, const SubdivisionRule& r) {
    if (!c.has_tile_types()) fail(ErrorKind::MissingTileType, "complex has no tile types");
    const auto nf = c.num_faces();
    std::vector<const TilePattern*> pat(nf);
    for (FaceId f = 0; f < nf; ++f) {
        pat[f] = &r.tile(*c.tile_type(f));
        if (pat[f]->sides() != c.face(f).boundary.size())
            fail(ErrorKind::GluingFailure, "face " + std::to_string(f) + " has " +
                                               std::to_string(c.face(f).boundary.size()) + " sides but tile type '" +
                                               pat[f]->name + "' has " + std::to_string(pat[f]->sides()));
    }
    // sub-edge type sequence of each old edge in a -> b direction
    std::vector<std::vector<std::string>> edge_split(c.num_edges());
    std::vector<bool> split_known(c.num_edges(), false);
    for (FaceId f = 0; f < nf; ++f) {
        const auto& b = c.face(f).boundary;
        for (std::size_t p = 0; p < b.size(); ++p) {
            auto seq = r.splits(r.side_type(*pat[f], p));
            if (b[p].reversed) seq = detail::reversed(seq);
            const auto e = b[p].edge;
            if (!split_known[e]) {
                edge_split[e] = std::move(seq);
                split_known[e] = true;
            } else if (edge_split[e] != seq) {
                fail(ErrorKind::GluingFailure, "edge " + std::to_string(e) + " is split differently by its two faces");
            }
        }
    }

    std::vector<Edge> edges;
    std::vector<Face> faces;
    std::vector<std::string> types;
    SubdivisionStep step;
    step.edge_children.assign(c.num_edges(), {});
    std::vector<std::vector<VertexId>> edge_points(c.num_edges()); // a, interior..., b
    std::vector<bool> allocated(c.num_edges(), false);
    VertexId next_vertex = static_cast<VertexId>(c.num_vertices());

    for (FaceId f = 0; f < nf; ++f) {
        const auto& b = c.face(f).boundary;
        const auto& t = *pat[f];
        const auto& p = t.pattern;
        const auto k = b.size();
        for (const auto& s : b) {
            const auto e = s.edge;
            if (allocated[e]) continue;
            allocated[e] = true;
            const auto pieces = edge_split[e].size();
            auto& pts = edge_points[e];
            pts.push_back(c.edge(e).a);
            for (std::size_t i = 1; i < pieces; ++i) pts.push_back(next_vertex++);
            pts.push_back(c.edge(e).b);
            for (std::size_t i = 0; i < pieces; ++i) {
                step.edge_children[e].push_back(static_cast<EdgeId>(edges.size()));
                edges.push_back({pts[i], pts[i + 1]});
            }
        }
        std::vector<VertexId> vmap(p.num_vertices(), kNone);
        std::vector<EdgeId> emap(p.num_edges(), kNone);
        for (std::size_t pos = 0; pos < k; ++pos) {
            const auto j = (pos + t.base_corner) % k;
            const auto& s = b[pos];
            auto pts = edge_points[s.edge];
            auto subs = step.edge_children[s.edge];
            if (s.reversed) {
                std::reverse(pts.begin(), pts.end());
                std::reverse(subs.begin(), subs.end());
            }
            const auto& sv = t.side_vertices[j];
            for (std::size_t i = 0; i < sv.size(); ++i) vmap[sv[i]] = pts[i];
            for (std::size_t i = 0; i < t.boundary_map[j].size(); ++i) emap[t.boundary_map[j][i]] = subs[i];
        }
        for (VertexId v = 0; v < p.num_vertices(); ++v)
            if (vmap[v] == kNone) vmap[v] = next_vertex++;
        for (EdgeId e = 0; e < p.num_edges(); ++e)
            if (emap[e] == kNone) {
                emap[e] = static_cast<EdgeId>(edges.size());
                edges.push_back({vmap[p.edge(e).a], vmap[p.edge(e).b]});
            }
        for (FaceId pf = 0; pf < p.num_faces(); ++pf) {
            Face nf_;
            for (const auto& ps : p.face(pf).boundary) {
                const auto ne = emap[ps.edge];
                const VertexId from = vmap[p.tail(ps)];
                nf_.boundary.push_back({ne, edges[ne].a != from});
            }
            faces.push_back(std::move(nf_));
            types.push_back(*p.tile_type(pf));
            step.face_parent.push_back(f);
        }
    }
    try {
        step.complex = Complex2D::build(next_vertex, std::move(edges), std::move(faces), std::move(types));
    } catch (const Error& e) {
        fail(ErrorKind::GluingFailure, e.what());
    }
    return step;
}

[[nodiscard]] inline Complex2D subdivide(const Complex2D& c, const SubdivisionRule& r) {
    return subdivide_traced(c, r).complex;
}

[[nodiscard]] inline Complex2D subdivide_n(Complex2D c, const SubdivisionRule& r, int n) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "subdivision count must be >= 0");
    for (int i = 0; i < n; ++i) c = subdivide(c, r);
    return c;
}

// Provenance across several levels: every final face's ancestor at level 0 and
// the final sub-edges of every level-0 edge.
struct SubdivisionTrace {
    Complex2D complex;
    std::vector<FaceId> face_root;
    std::vector<std::vector<EdgeId>> edge_descendants;
};

[[nodiscard]] inline SubdivisionTrace subdivide_n_traced(const Complex2D& c, const SubdivisionRule& r, int n) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "subdivision count must be >= 0");
    SubdivisionTrace tr;
    tr.complex = c;
    tr.face_root.resize(c.num_faces());
    std::iota(tr.face_root.begin(), tr.face_root.end(), 0);
    tr.edge_descendants.resize(c.num_edges());
    for (EdgeId e = 0; e < c.num_edges(); ++e) tr.edge_descendants[e] = {e};
    for (int i = 0; i < n; ++i) {
        auto step = subdivide_traced(tr.complex, r);
        std::vector<FaceId> roots(step.face_parent.size());
        for (std::size_t f = 0; f < roots.size(); ++f) roots[f] = tr.face_root[step.face_parent[f]];
        for (auto& desc : tr.edge_descendants) {
            std::vector<EdgeId> next;
            for (auto e : desc) {
                const auto& ch = step.edge_children[e];
                next.insert(next.end(), ch.begin(), ch.end());
            }
            desc = std::move(next);
        }
        tr.face_root = std::move(roots);
        tr.complex = std::move(step.complex);
    }
    return tr;
}

// ---------------------------------------------------------------------------
// Valence growth
// ---------------------------------------------------------------------------

enum class GrowthKind { bounded, linear, exponential };

[[nodiscard]] constexpr std::string_view to_string(GrowthKind g) noexcept {
    switch (g) {
    case GrowthKind::bounded: return "bounded";
    case GrowthKind::linear: return "linear";
    case GrowthKind::exponential: return "exponential";
    }
    return "unknown";
}

struct GrowthClass {
    GrowthKind kind = GrowthKind::bounded;
    std::vector<std::size_t> valences; // stages 1..n
    double multiplier = 1.0;           // exponential
    long long addend = 0;              // linear
};

// Valence of v after 1..stages subdivisions. Only the star of v is carried
// from stage to stage, since the valence depends on nothing else.
[[nodiscard]] inline std::vector<std::size_t> valence_sequence(const SubdivisionRule& r, const Complex2D& c,
                                                               VertexId v, int stages) {
    std::vector<std::size_t> out;
    auto sub = subcomplex(c, star_faces(c, v, 1));
    VertexId local = static_cast<VertexId>(
        std::find(sub.parent.vertices.begin(), sub.parent.vertices.end(), v) - sub.parent.vertices.begin());
    Complex2D cur = std::move(sub.complex);
    for (int i = 0; i < stages; ++i) {
        cur = subdivide(cur, r); // vertex ids of old vertices are kept
        out.push_back(cur.valence(local));
        auto s = subcomplex(cur, star_faces(cur, local, 1));
        local = static_cast<VertexId>(
            std::find(s.parent.vertices.begin(), s.parent.vertices.end(), local) - s.parent.vertices.begin());
        cur = std::move(s.complex);
    }
    return out;
}

[[nodiscard]] inline GrowthClass classify_growth_sequence(std::vector<std::size_t> vals) {
    GrowthClass g;
    g.valences = std::move(vals);
    const auto& v = g.valences;
    const auto n = v.size();
    auto all = [&](auto pred) {
        for (std::size_t i = 1; i < n; ++i)
            if (!pred(i)) return false;
        return true;
    };
    if (all([&](std::size_t i) { return v[i] == v[0]; })) {
        g.kind = GrowthKind::bounded;
        return g;
    }
    const auto d = static_cast<long long>(v[1]) - static_cast<long long>(v[0]);
    if (d > 0 && all([&](std::size_t i) { return static_cast<long long>(v[i]) - static_cast<long long>(v[i - 1]) == d; })) {
        g.kind = GrowthKind::linear;
        g.addend = d;
        return g;
    }
    // exact geometric: v[i] * v[0] == v[1] * v[i-1] for all i
    if (v[1] > v[0] && all([&](std::size_t i) { return v[i] * v[0] == v[1] * v[i - 1]; })) {
        g.kind = GrowthKind::exponential;
        g.multiplier = static_cast<double>(v[1]) / static_cast<double>(v[0]);
        return g;
    }
    // No exact fit: differences that keep growing read as exponential.
    bool diffs_growing = true;
    for (std::size_t i = 2; i < n; ++i)
        if (v[i] - v[i - 1] <= v[i - 1] - v[i - 2]) diffs_growing = false;
    if (diffs_growing && v[n - 1] > v[n - 2]) {
        g.kind = GrowthKind::exponential;
        g.multiplier = static_cast<double>(v[n - 1]) / static_cast<double>(v[n - 2]);
    } else if (v[n - 1] > v[n - 2]) {
        g.kind = GrowthKind::linear;
        g.addend = static_cast<long long>(v[n - 1]) - static_cast<long long>(v[n - 2]);
    } else {
        g.kind = GrowthKind::bounded;
    }
    return g;
}

[[nodiscard]] inline GrowthClass classify_growth(const SubdivisionRule& r, const Complex2D& c, VertexId v, int stages) {
    if (stages < 4) fail(ErrorKind::InvalidArgument, "growth classification needs at least 4 stages");
    if (v >= c.num_vertices()) fail(ErrorKind::UnknownVertex, "vertex " + std::to_string(v));
    if (c.is_boundary_vertex(v)) fail(ErrorKind::NotInterior, "vertex " + std::to_string(v) + " is on the boundary");
    return classify_growth_sequence(valence_sequence(r, c, v, stages));
}

} // namespace subdiv
