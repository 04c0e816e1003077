#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "subdiv/error.hpp"

namespace subdiv {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using FaceId = std::uint32_t;

inline constexpr std::uint32_t kNone = 0xffffffffu;

struct Edge {
    VertexId a{};
    VertexId b{};
    bool operator==(const Edge&) const = default;
};

// An edge as it appears in a face boundary; reversed means the face walks b -> a.
struct SignedEdge {
    EdgeId edge{};
    bool reversed = false;
    bool operator==(const SignedEdge&) const = default;
};

struct Face {
    std::vector<SignedEdge> boundary;
    bool operator==(const Face&) const = default;
};

// ---------------------------------------------------------------------------
// Complex2D
// ---------------------------------------------------------------------------

// Combinatorial 2-complex with face-centric storage. Vertices are the dense
// range [0, num_vertices). Immutable after construction; every constructor
// path goes through validation.
class Complex2D {
public:
    Complex2D() = default;

    static Complex2D build(std::size_t num_vertices, std::vector<Edge> edges,
                           std::vector<Face> faces,
                           std::vector<std::string> tile_types = {});

    // Builds edges in order of first appearance from vertex cycles.
    static Complex2D from_polygons(std::size_t num_vertices,
                                   const std::vector<std::vector<VertexId>>& polygons,
                                   std::vector<std::string> tile_types = {});

    [[nodiscard]] std::size_t num_vertices() const noexcept { return num_vertices_; }
    [[nodiscard]] std::size_t num_edges() const noexcept { return edges_.size(); }
    [[nodiscard]] std::size_t num_faces() const noexcept { return faces_.size(); }

    [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_.at(e); }
    [[nodiscard]] const Face& face(FaceId f) const { return faces_.at(f); }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
    [[nodiscard]] const std::vector<Face>& faces() const noexcept { return faces_; }

    [[nodiscard]] bool has_tile_types() const noexcept { return !tile_types_.empty(); }
    [[nodiscard]] const std::vector<std::string>& tile_types() const noexcept { return tile_types_; }
    [[nodiscard]] std::optional<std::string> tile_type(FaceId f) const {
        if (tile_types_.empty()) return std::nullopt;
        return tile_types_.at(f);
    }

    [[nodiscard]] VertexId tail(SignedEdge s) const {
        const auto& e = edges_.at(s.edge);
        return s.reversed ? e.b : e.a;
    }
    [[nodiscard]] VertexId head(SignedEdge s) const {
        const auto& e = edges_.at(s.edge);
        return s.reversed ? e.a : e.b;
    }

    // Vertices of f in traversal order, starting at the tail of its first edge.
    [[nodiscard]] std::vector<VertexId> face_vertices(FaceId f) const {
        std::vector<VertexId> out;
        out.reserve(faces_.at(f).boundary.size());
        for (const auto& s : faces_[f].boundary) out.push_back(tail(s));
        return out;
    }

    [[nodiscard]] const std::vector<FaceId>& edge_faces(EdgeId e) const { return edge_faces_.at(e); }
    [[nodiscard]] const std::vector<FaceId>& vertex_faces(VertexId v) const { return vertex_faces_.at(v); }
    [[nodiscard]] const std::vector<EdgeId>& vertex_edges(VertexId v) const { return vertex_edges_.at(v); }

    [[nodiscard]] bool is_boundary_edge(EdgeId e) const { return edge_faces_.at(e).size() == 1; }
    [[nodiscard]] bool is_boundary_vertex(VertexId v) const {
        for (auto e : vertex_edges_.at(v))
            if (edge_faces_[e].size() < 2) return true;
        return vertex_faces_[v].empty();
    }
    [[nodiscard]] bool is_closed() const {
        for (const auto& fs : edge_faces_)
            if (fs.size() != 2) return false;
        return true;
    }

    // Number of faces incident to v.
    [[nodiscard]] std::size_t valence(VertexId v) const { return vertex_faces_.at(v).size(); }

    [[nodiscard]] VertexId other_end(EdgeId e, VertexId v) const {
        const auto& ed = edges_.at(e);
        return ed.a == v ? ed.b : ed.a;
    }

    // Position of edge e in the boundary of f, or kNone.
    [[nodiscard]] std::uint32_t position_in_face(FaceId f, EdgeId e) const {
        const auto& b = faces_.at(f).boundary;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b[i].edge == e) return static_cast<std::uint32_t>(i);
        return kNone;
    }

    [[nodiscard]] int euler_characteristic() const noexcept {
        return static_cast<int>(num_vertices_) - static_cast<int>(edges_.size()) +
               static_cast<int>(faces_.size());
    }

    // Boundary cycles, each walked in the direction its face traverses it,
    // starting from the lowest edge id of the cycle; cycles ordered by that id.
    [[nodiscard]] std::vector<std::vector<SignedEdge>> boundary_cycles() const;

    bool operator==(const Complex2D& o) const {
        return num_vertices_ == o.num_vertices_ && edges_ == o.edges_ && faces_ == o.faces_ &&
               tile_types_ == o.tile_types_;
    }

private:
    void validate_and_index();

    std::size_t num_vertices_ = 0;
    std::vector<Edge> edges_;
    std::vector<Face> faces_;
    std::vector<std::string> tile_types_;

    std::vector<std::vector<FaceId>> edge_faces_;
    std::vector<std::vector<FaceId>> vertex_faces_;
    std::vector<std::vector<EdgeId>> vertex_edges_;
};

inline Complex2D Complex2D::build(std::size_t num_vertices, std::vector<Edge> edges,
                                  std::vector<Face> faces, std::vector<std::string> tile_types) {
    Complex2D c;
    c.num_vertices_ = num_vertices;
    c.edges_ = std::move(edges);
    c.faces_ = std::move(faces);
    c.tile_types_ = std::move(tile_types);
    c.validate_and_index();
    return c;
}

inline Complex2D Complex2D::from_polygons(std::size_t num_vertices,
                                          const std::vector<std::vector<VertexId>>& polygons,
                                          std::vector<std::string> tile_types) {
    std::vector<Edge> edges;
    std::vector<Face> faces;
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(num_vertices);
    auto lookup = [&](VertexId u, VertexId w) -> std::optional<EdgeId> {
        if (u >= num_vertices) return std::nullopt;
        for (const auto& [x, id] : adj[u])
            if (x == w) return id;
        return std::nullopt;
    };
    for (const auto& poly : polygons) {
        Face f;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const VertexId u = poly[i];
            const VertexId w = poly[(i + 1) % poly.size()];
            auto id = lookup(u, w);
            if (!id) {
                id = static_cast<EdgeId>(edges.size());
                edges.push_back({u, w});
                if (u < num_vertices && w < num_vertices) {
                    adj[u].push_back({w, *id});
                    adj[w].push_back({u, *id});
                }
            }
            f.boundary.push_back({*id, edges[*id].a != u});
        }
        faces.push_back(std::move(f));
    }
    return build(num_vertices, std::move(edges), std::move(faces), std::move(tile_types));
}

inline void Complex2D::validate_and_index() {
    const auto nv = num_vertices_;
    if (nv == 0) fail(ErrorKind::InvalidArgument, "complex has no vertices");
    if (!tile_types_.empty() && tile_types_.size() != faces_.size())
        fail(ErrorKind::InvalidArgument, "tile_types must name every face");

    edge_faces_.assign(edges_.size(), {});
    vertex_faces_.assign(nv, {});
    vertex_edges_.assign(nv, {});

    for (EdgeId e = 0; e < edges_.size(); ++e) {
        const auto& ed = edges_[e];
        if (ed.a >= nv || ed.b >= nv)
            fail(ErrorKind::InvalidEdge, "edge " + std::to_string(e) + " cites a missing vertex");
        if (ed.a == ed.b) fail(ErrorKind::InvalidEdge, "edge " + std::to_string(e) + " is a loop");
        vertex_edges_[ed.a].push_back(e);
        vertex_edges_[ed.b].push_back(e);
    }

    std::vector<std::vector<bool>> edge_dir_seen(edges_.size());
    for (FaceId f = 0; f < faces_.size(); ++f) {
        const auto& b = faces_[f].boundary;
        for (const auto& s : b)
            if (s.edge >= edges_.size())
                fail(ErrorKind::DanglingEdge,
                     "face " + std::to_string(f) + " cites missing edge " + std::to_string(s.edge));
        if (b.size() < 3) fail(ErrorKind::InvalidFace, "face " + std::to_string(f) + " has fewer than 3 edges");
        std::vector<VertexId> verts;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (head(b[i]) != tail(b[(i + 1) % b.size()]))
                fail(ErrorKind::InvalidFace, "face " + std::to_string(f) + " boundary is not a closed edge cycle");
            verts.push_back(tail(b[i]));
        }
        auto sorted = verts;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            fail(ErrorKind::InvalidFace, "face " + std::to_string(f) + " boundary is not a simple cycle");
        for (const auto& s : b) {
            auto& fs = edge_faces_[s.edge];
            fs.push_back(f);
            if (fs.size() > 2)
                fail(ErrorKind::NonManifold, "edge " + std::to_string(s.edge) + " bounds more than two faces");
        }
        for (auto v : verts) vertex_faces_[v].push_back(f);
    }

    for (EdgeId e = 0; e < edges_.size(); ++e) {
        const auto& fs = edge_faces_[e];
        if (fs.empty()) fail(ErrorKind::InvalidEdge, "edge " + std::to_string(e) + " bounds no face");
        if (fs.size() == 2) {
            const auto p0 = position_in_face(fs[0], e);
            const auto p1 = position_in_face(fs[1], e);
            if (faces_[fs[0]].boundary[p0].reversed == faces_[fs[1]].boundary[p1].reversed)
                fail(ErrorKind::InconsistentOrientation,
                     "edge " + std::to_string(e) + " is traversed the same way by both faces");
        }
    }

    // Faces around each vertex must form a single fan (vertex-manifold).
    for (VertexId v = 0; v < nv; ++v) {
        const auto& vf = vertex_faces_[v];
        if (vf.size() <= 1) continue;
        std::vector<std::size_t> parent(vf.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t i) {
            while (parent[i] != i) i = parent[i] = parent[parent[i]];
            return i;
        };
        auto local = [&](FaceId f) {
            return static_cast<std::size_t>(std::find(vf.begin(), vf.end(), f) - vf.begin());
        };
        for (auto e : vertex_edges_[v]) {
            const auto& fs = edge_faces_[e];
            if (fs.size() == 2) parent[find(local(fs[0]))] = find(local(fs[1]));
        }
        const auto root = find(0);
        for (std::size_t i = 1; i < vf.size(); ++i)
            if (find(i) != root)
                fail(ErrorKind::NonManifold, "faces around vertex " + std::to_string(v) + " do not form a single fan");
    }

    // Connectivity over the 1-skeleton.
    std::vector<bool> seen(nv, false);
    std::vector<VertexId> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (auto e : vertex_edges_[v]) {
            const auto w = other_end(e, v);
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    if (count != nv) fail(ErrorKind::Disconnected, "complex is not connected");
}

inline std::vector<std::vector<SignedEdge>> Complex2D::boundary_cycles() const {
    // outgoing oriented boundary edge per vertex
    std::vector<std::vector<SignedEdge>> out(num_vertices_);
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        if (edge_faces_[e].size() != 1) continue;
        const auto f = edge_faces_[e][0];
        const auto p = position_in_face(f, e);
        const auto s = faces_[f].boundary[p];
        out[tail(s)].push_back(s);
    }
    std::vector<bool> used(edges_.size(), false);
    std::vector<std::vector<SignedEdge>> cycles;
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        if (edge_faces_[e].size() != 1 || used[e]) continue;
        const auto f = edge_faces_[e][0];
        SignedEdge cur = faces_[f].boundary[position_in_face(f, e)];
        std::vector<SignedEdge> cycle;
        while (!used[cur.edge]) {
            used[cur.edge] = true;
            cycle.push_back(cur);
            const auto& nexts = out[head(cur)];
            if (nexts.empty()) break;
            cur = nexts.front();
        }
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

// ---------------------------------------------------------------------------
// Sub-complexes
// ---------------------------------------------------------------------------

// Ids of a sub-complex's cells in the complex it was cut from.
struct ParentMap {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
    std::vector<FaceId> faces;

    [[nodiscard]] bool empty() const noexcept { return faces.empty(); }
};

struct SubComplex {
    Complex2D complex;
    ParentMap parent;
};

// Sub-complex spanned by the given faces; ids are assigned in increasing parent-id order.
[[nodiscard]] inline SubComplex subcomplex(const Complex2D& c, std::vector<FaceId> faces) {
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    std::vector<std::uint32_t> vmap(c.num_vertices(), kNone), emap(c.num_edges(), kNone);
    std::vector<bool> vuse(c.num_vertices(), false), euse(c.num_edges(), false);
    for (auto f : faces)
        for (const auto& s : c.face(f).boundary) {
            euse[s.edge] = true;
            vuse[c.edge(s.edge).a] = vuse[c.edge(s.edge).b] = true;
        }
    SubComplex out;
    for (VertexId v = 0; v < c.num_vertices(); ++v)
        if (vuse[v]) {
            vmap[v] = static_cast<VertexId>(out.parent.vertices.size());
            out.parent.vertices.push_back(v);
        }
    std::vector<Edge> edges;
    for (EdgeId e = 0; e < c.num_edges(); ++e)
        if (euse[e]) {
            emap[e] = static_cast<EdgeId>(edges.size());
            out.parent.edges.push_back(e);
            edges.push_back({vmap[c.edge(e).a], vmap[c.edge(e).b]});
        }
    std::vector<Face> fs;
    std::vector<std::string> types;
    for (auto f : faces) {
        Face nf;
        for (const auto& s : c.face(f).boundary) nf.boundary.push_back({emap[s.edge], s.reversed});
        fs.push_back(std::move(nf));
        if (c.has_tile_types()) types.push_back(*c.tile_type(f));
    }
    out.parent.faces = faces;
    out.complex = Complex2D::build(out.parent.vertices.size(), std::move(edges), std::move(fs), std::move(types));
    return out;
}

[[nodiscard]] inline bool is_disk(const Complex2D& c) {
    return c.euler_characteristic() == 1 && c.boundary_cycles().size() == 1;
}

// Faces of the depth-d star of v: depth 1 is the closed star, depth d+1 adds
// every face touching a vertex of the depth-d star.
[[nodiscard]] inline std::vector<FaceId> star_faces(const Complex2D& c, VertexId v, int depth) {
    if (v >= c.num_vertices()) fail(ErrorKind::UnknownVertex, "vertex " + std::to_string(v));
    std::vector<bool> vin(c.num_vertices(), false), fin(c.num_faces(), false);
    std::vector<VertexId> frontier{v};
    vin[v] = true;
    std::vector<FaceId> faces;
    for (int d = 0; d < depth; ++d) {
        std::vector<VertexId> next;
        for (auto u : frontier)
            for (auto f : c.vertex_faces(u)) {
                if (fin[f]) continue;
                fin[f] = true;
                faces.push_back(f);
                for (auto w : c.face_vertices(f))
                    if (!vin[w]) {
                        vin[w] = true;
                        next.push_back(w);
                    }
            }
        frontier = std::move(next);
    }
    std::sort(faces.begin(), faces.end());
    return faces;
}

struct Star {
    SubComplex sub;
    std::vector<EdgeId> link; // parent edge ids, in boundary order
};

[[nodiscard]] inline Star star(const Complex2D& c, VertexId v) {
    Star s{subcomplex(c, star_faces(c, v, 1)), {}};
    for (const auto& cycle : s.sub.complex.boundary_cycles())
        for (const auto& se : cycle) {
            const auto& e = s.sub.complex.edge(se.edge);
            if (s.sub.parent.vertices[e.a] != v && s.sub.parent.vertices[e.b] != v)
                s.link.push_back(s.sub.parent.edges[se.edge]);
        }
    return s;
}

// ---------------------------------------------------------------------------
// Adjacency and valence
// ---------------------------------------------------------------------------

enum class Adjacency { edge, vertex };

// Face adjacency lists, sorted by face id.
[[nodiscard]] inline std::vector<std::vector<FaceId>> adjacency_graph(const Complex2D& c, Adjacency mode) {
    std::vector<std::vector<FaceId>> adj(c.num_faces());
    if (mode == Adjacency::edge) {
        for (EdgeId e = 0; e < c.num_edges(); ++e) {
            const auto& fs = c.edge_faces(e);
            if (fs.size() == 2) {
                adj[fs[0]].push_back(fs[1]);
                adj[fs[1]].push_back(fs[0]);
            }
        }
    } else {
        for (VertexId v = 0; v < c.num_vertices(); ++v) {
            const auto& fs = c.vertex_faces(v);
            for (auto f : fs)
                for (auto g : fs)
                    if (f != g) adj[f].push_back(g);
        }
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

struct ValenceReport {
    VertexId vertex{};
    std::size_t valence = 0;          // faces at the vertex
    std::size_t max_neighbor_valence = 0;
};

[[nodiscard]] inline ValenceReport valence_report(const Complex2D& c, VertexId v) {
    if (v >= c.num_vertices()) fail(ErrorKind::UnknownVertex, "vertex " + std::to_string(v));
    ValenceReport r{v, c.valence(v), 0};
    for (auto e : c.vertex_edges(v))
        r.max_neighbor_valence = std::max(r.max_neighbor_valence, c.valence(c.other_end(e, v)));
    return r;
}

// ---------------------------------------------------------------------------
// Structural transformations
// ---------------------------------------------------------------------------

// Faces around v in rotation order (following each face's outgoing edge at v).
[[nodiscard]] inline std::vector<FaceId> faces_around(const Complex2D& c, VertexId v) {
    const auto& vf = c.vertex_faces(v);
    if (vf.empty()) return {};
    auto outgoing = [&](FaceId f) -> SignedEdge {
        for (const auto& s : c.face(f).boundary)
            if (c.tail(s) == v) return s;
        return {};
    };
    auto incoming = [&](FaceId f) -> SignedEdge {
        for (const auto& s : c.face(f).boundary)
            if (c.head(s) == v) return s;
        return {};
    };
    // On the boundary start at the face whose incoming edge at v is a boundary edge.
    FaceId start = vf.front();
    for (auto f : vf)
        if (c.is_boundary_edge(incoming(f).edge)) {
            start = f;
            break;
        }
    std::vector<FaceId> order{start};
    FaceId cur = start;
    while (true) {
        const auto e = outgoing(cur).edge;
        const auto& fs = c.edge_faces(e);
        if (fs.size() < 2) break;
        const FaceId next = fs[0] == cur ? fs[1] : fs[0];
        if (next == start) break;
        order.push_back(next);
        cur = next;
    }
    return order;
}

// Dual of a closed surface: vertex f for face f, edge e* joins the faces of e
// (from the face traversing e forward), face v* for vertex v.
[[nodiscard]] inline Complex2D dual_tiling(const Complex2D& c) {
    if (!c.is_closed()) fail(ErrorKind::HasBoundary, "dual_tiling requires a closed surface");
    std::vector<Edge> edges(c.num_edges());
    for (EdgeId e = 0; e < c.num_edges(); ++e) {
        const auto& fs = c.edge_faces(e);
        const bool first_forward = !c.face(fs[0]).boundary[c.position_in_face(fs[0], e)].reversed;
        edges[e] = first_forward ? Edge{fs[0], fs[1]} : Edge{fs[1], fs[0]};
    }
    std::vector<Face> faces(c.num_vertices());
    for (VertexId v = 0; v < c.num_vertices(); ++v) {
        const auto around = faces_around(c, v);
        Face df;
        for (std::size_t i = 0; i < around.size(); ++i) {
            const FaceId f = around[i];
            const FaceId g = around[(i + 1) % around.size()];
            EdgeId shared = kNone;
            for (const auto& s : c.face(f).boundary)
                if (c.tail(s) == v) shared = s.edge;
            df.boundary.push_back({shared, !(edges[shared].a == f && edges[shared].b == g)});
        }
        faces[v] = std::move(df);
    }
    return Complex2D::build(c.num_faces(), std::move(edges), std::move(faces));
}

// Replaces each vertex by a polygon. Vertex (v at edge e) gets id 2e or 2e+1
// depending on which end of e v is. Interior vertices of valence k become
// k-gons; a boundary vertex in j >= 2 faces becomes a (j+1)-gon closed by a
// new boundary edge; a boundary vertex in a single face is truncated.
[[nodiscard]] inline Complex2D blow_up_vertices(const Complex2D& c) {
    auto at = [&](VertexId v, EdgeId e) -> VertexId {
        return static_cast<VertexId>(2 * e + (c.edge(e).a == v ? 0 : 1));
    };
    std::vector<Edge> edges;
    for (EdgeId e = 0; e < c.num_edges(); ++e) edges.push_back({2 * e, 2 * e + 1});
    std::vector<Face> faces;
    // corner edges: per face, per position i (corner at head of edge i)
    std::vector<std::vector<EdgeId>> corner(c.num_faces());
    for (FaceId f = 0; f < c.num_faces(); ++f) {
        const auto& b = c.face(f).boundary;
        Face nf;
        for (std::size_t i = 0; i < b.size(); ++i) {
            const auto& s = b[i];
            const auto& t = b[(i + 1) % b.size()];
            const VertexId v = c.head(s);
            const EdgeId ce = static_cast<EdgeId>(edges.size());
            edges.push_back({at(v, s.edge), at(v, t.edge)});
            corner[f].push_back(ce);
            nf.boundary.push_back({s.edge, s.reversed});
            nf.boundary.push_back({ce, false});
        }
        faces.push_back(std::move(nf));
    }
    std::vector<std::string> types = c.tile_types();
    for (VertexId v = 0; v < c.num_vertices(); ++v) {
        const auto around = faces_around(c, v);
        // corner edge of f at v runs (v@in -> v@out); the vertex polygon walks them reversed.
        std::vector<SignedEdge> chain;
        for (auto it = around.rbegin(); it != around.rend(); ++it) {
            const FaceId f = *it;
            const auto& b = c.face(f).boundary;
            for (std::size_t i = 0; i < b.size(); ++i)
                if (c.head(b[i]) == v) chain.push_back({corner[f][i], true});
        }
        const bool interior = !c.is_boundary_vertex(v);
        if (interior) {
            faces.push_back({chain});
        } else {
            if (around.size() < 2) continue;
            // chain runs from head of first to tail of last; close it.
            const VertexId from = edges[chain.back().edge].a; // reversed: head is a
            const VertexId to = edges[chain.front().edge].b;  // reversed: tail is b
            const EdgeId closing = static_cast<EdgeId>(edges.size());
            edges.push_back({from, to});
            chain.push_back({closing, false});
            faces.push_back({chain});
        }
        if (c.has_tile_types()) types.push_back("vertex");
    }
    return Complex2D::build(2 * c.num_edges(), std::move(edges), std::move(faces), std::move(types));
}

// ---------------------------------------------------------------------------
// Canonical form (isomorphism test for small complexes)
// ---------------------------------------------------------------------------

namespace detail {

// Code of the complex as seen from a root dart, traversing faces breadth-first.
// Each face is entered at a position and walked in a direction chosen so that
// shared edges are traversed oppositely to the face they were reached from.
inline std::vector<std::int64_t> rooted_code(const Complex2D& c, FaceId root, std::uint32_t pos, bool forward) {
    const auto nf = c.num_faces();
    std::vector<std::int64_t> label(nf, -1);
    std::vector<std::uint32_t> entry(nf, 0);
    std::vector<bool> dir(nf, true);
    std::vector<std::int64_t> code;
    std::queue<FaceId> q;
    label[root] = 0;
    entry[root] = pos;
    dir[root] = forward;
    q.push(root);
    std::int64_t next_label = 1;
    while (!q.empty()) {
        const auto f = q.front();
        q.pop();
        const auto& b = c.face(f).boundary;
        const auto k = b.size();
        code.push_back(-static_cast<std::int64_t>(k));
        for (std::size_t step = 0; step < k; ++step) {
            const std::size_t i = dir[f] ? (entry[f] + step) % k : (entry[f] + k - step) % k;
            const auto& s = b[i];
            // effective traversal: forward walk keeps s.reversed, backward flips it.
            const bool walked_reversed = dir[f] ? s.reversed : !s.reversed;
            const auto& fs = c.edge_faces(s.edge);
            if (fs.size() < 2) {
                code.push_back(-1000000);
                continue;
            }
            const FaceId g = fs[0] == f ? fs[1] : fs[0];
            if (label[g] < 0) {
                label[g] = next_label++;
                const auto gp = c.position_in_face(g, s.edge);
                entry[g] = gp;
                // g must walk the edge opposite to how f walked it.
                dir[g] = c.face(g).boundary[gp].reversed != walked_reversed;
                q.push(g);
            }
            const auto gk = c.face(g).boundary.size();
            const auto gp = c.position_in_face(g, s.edge);
            const auto rel = dir[g] ? (gp + gk - entry[g]) % gk : (entry[g] + gk - gp) % gk;
            code.push_back(label[g]);
            code.push_back(static_cast<std::int64_t>(rel));
        }
    }
    return code;
}

} // namespace detail

// Canonical code, equal for isomorphic complexes (orientation-reversing
// isomorphisms included). Cost is quadratic in the dart count.
[[nodiscard]] inline std::vector<std::int64_t> canonical_form(const Complex2D& c) {
    std::vector<std::int64_t> best;
    for (FaceId f = 0; f < c.num_faces(); ++f)
        for (std::uint32_t p = 0; p < c.face(f).boundary.size(); ++p)
            for (bool fwd : {true, false}) {
                auto code = detail::rooted_code(c, f, p, fwd);
                if (best.empty() || code < best) best = std::move(code);
            }
    best.push_back(static_cast<std::int64_t>(c.num_vertices()));
    best.push_back(static_cast<std::int64_t>(c.num_edges()));
    return best;
}

[[nodiscard]] inline bool isomorphic(const Complex2D& a, const Complex2D& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges() ||
        a.num_faces() != b.num_faces())
        return false;
    return canonical_form(a) == canonical_form(b);
}

} // namespace subdiv
