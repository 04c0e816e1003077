#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <vector>

#include "subdiv/complex.hpp"

namespace subdiv {

// An annulus with its two boundary cycles marked. Edge ids refer to `complex`;
// `parent` records where the annulus was cut from, when it was cut.
struct RingMarking {
    Complex2D complex;
    std::vector<EdgeId> inner;
    std::vector<EdgeId> outer;
    ParentMap parent;
};

// A disk with four boundary arcs in cyclic order top, right, bottom, left.
// corners[i] is the start vertex of arcs[i] along the oriented boundary.
struct QuadMarking {
    Complex2D complex;
    std::array<std::vector<EdgeId>, 4> arcs;
    std::array<VertexId, 4> corners{};
    ParentMap parent;

    [[nodiscard]] const std::vector<EdgeId>& top() const { return arcs[0]; }
    [[nodiscard]] const std::vector<EdgeId>& right() const { return arcs[1]; }
    [[nodiscard]] const std::vector<EdgeId>& bottom() const { return arcs[2]; }
    [[nodiscard]] const std::vector<EdgeId>& left() const { return arcs[3]; }
};

// Vertices touched by a set of edges, sorted.
[[nodiscard]] inline std::vector<VertexId> edge_set_vertices(const Complex2D& c, const std::vector<EdgeId>& edges) {
    std::vector<VertexId> out;
    for (auto e : edges) {
        out.push_back(c.edge(e).a);
        out.push_back(c.edge(e).b);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace detail {

inline std::vector<EdgeId> cycle_edges(const std::vector<SignedEdge>& cycle) {
    std::vector<EdgeId> out;
    for (const auto& s : cycle) out.push_back(s.edge);
    return out;
}

inline bool same_edge_set(std::vector<EdgeId> a, std::vector<EdgeId> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

} // namespace detail

// Validates the annulus invariants: chi = 0, exactly two boundary cycles, and
// those cycles are `inner` and `outer` (as edge sets). The cycles are stored in
// boundary-walk order.
[[nodiscard]] inline RingMarking make_ring(Complex2D c, const std::vector<EdgeId>& inner,
                                           const std::vector<EdgeId>& outer, ParentMap parent = {}) {
    if (c.euler_characteristic() != 0)
        fail(ErrorKind::NotAnAnnulus, "ring must have Euler characteristic 0, got " +
                                          std::to_string(c.euler_characteristic()));
    const auto cycles = c.boundary_cycles();
    if (cycles.size() != 2)
        fail(ErrorKind::NotAnAnnulus, "ring must have two boundary components, got " + std::to_string(cycles.size()));
    for (auto e : inner)
        if (e >= c.num_edges() || !c.is_boundary_edge(e))
            fail(ErrorKind::InvalidMarking, "inner boundary edge " + std::to_string(e) + " is not a boundary edge");
    for (auto e : outer)
        if (e >= c.num_edges() || !c.is_boundary_edge(e))
            fail(ErrorKind::InvalidMarking, "outer boundary edge " + std::to_string(e) + " is not a boundary edge");
    const auto c0 = detail::cycle_edges(cycles[0]);
    const auto c1 = detail::cycle_edges(cycles[1]);
    RingMarking r;
    if (detail::same_edge_set(inner, c0) && detail::same_edge_set(outer, c1)) {
        r.inner = c0;
        r.outer = c1;
    } else if (detail::same_edge_set(inner, c1) && detail::same_edge_set(outer, c0)) {
        r.inner = c1;
        r.outer = c0;
    } else {
        fail(ErrorKind::InvalidMarking, "inner and outer must be the two boundary cycles");
    }
    r.complex = std::move(c);
    r.parent = std::move(parent);
    return r;
}

// Quad from four corner vertices on the single boundary cycle, listed in the
// boundary's walking order starting at the top-left corner.
[[nodiscard]] inline QuadMarking make_quad(Complex2D c, const std::array<VertexId, 4>& corners, ParentMap parent = {}) {
    if (c.euler_characteristic() != 1)
        fail(ErrorKind::NotADisk, "quadrilateral must have Euler characteristic 1");
    const auto cycles = c.boundary_cycles();
    if (cycles.size() != 1) fail(ErrorKind::NotADisk, "quadrilateral must have one boundary component");
    const auto& cyc = cycles[0];
    const auto n = cyc.size();
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i)
        if (c.tail(cyc[i]) == corners[0]) start = i;
    if (start == n) fail(ErrorKind::InvalidMarking, "corner is not on the boundary");
    QuadMarking q;
    q.corners = corners;
    int arc = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& s = cyc[(start + k) % n];
        if (arc < 3 && c.tail(s) == corners[static_cast<std::size_t>(arc) + 1]) ++arc;
        q.arcs[static_cast<std::size_t>(arc)].push_back(s.edge);
    }
    if (arc != 3) fail(ErrorKind::InvalidMarking, "corners are not in boundary order");
    for (const auto& a : q.arcs)
        if (a.empty()) fail(ErrorKind::InvalidMarking, "quadrilateral arcs must be non-empty");
    q.complex = std::move(c);
    q.parent = std::move(parent);
    return q;
}

// Quad from named arcs (edge lists). Each arc must be a contiguous run of the
// boundary cycle, and the runs must appear as top, side, bottom, side.
[[nodiscard]] inline QuadMarking make_quad_from_arcs(Complex2D c, const std::vector<EdgeId>& top,
                                                     const std::vector<EdgeId>& bottom,
                                                     const std::vector<EdgeId>& left,
                                                     const std::vector<EdgeId>& right) {
    if (c.euler_characteristic() != 1)
        fail(ErrorKind::NotADisk, "quadrilateral must have Euler characteristic 1");
    const auto cycles = c.boundary_cycles();
    if (cycles.size() != 1) fail(ErrorKind::NotADisk, "quadrilateral must have one boundary component");
    const auto& cyc = cycles[0];
    std::vector<int> label(c.num_edges(), -1);
    const std::array<const std::vector<EdgeId>*, 4> named{&top, &right, &bottom, &left};
    std::size_t total = 0;
    for (int k = 0; k < 4; ++k) {
        if (named[static_cast<std::size_t>(k)]->empty()) fail(ErrorKind::InvalidMarking, "quadrilateral arcs must be non-empty");
        for (auto e : *named[static_cast<std::size_t>(k)]) {
            if (e >= c.num_edges() || !c.is_boundary_edge(e))
                fail(ErrorKind::InvalidMarking, "arc edge " + std::to_string(e) + " is not a boundary edge");
            if (label[e] >= 0) fail(ErrorKind::InvalidMarking, "arcs overlap");
            label[e] = k;
            ++total;
        }
    }
    if (total != cyc.size()) fail(ErrorKind::InvalidMarking, "arcs must cover the boundary");
    // Find the start of the top run.
    const auto n = cyc.size();
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i)
        if (label[cyc[i].edge] == 0 && label[cyc[(i + n - 1) % n].edge] != 0) start = i;
    if (start == n) fail(ErrorKind::InvalidMarking, "top arc is not a contiguous run");
    std::vector<int> runs;
    for (std::size_t k = 0; k < n; ++k) {
        const int l = label[cyc[(start + k) % n].edge];
        if (runs.empty() || runs.back() != l) runs.push_back(l);
    }
    if (runs.size() != 4 || runs[0] != 0 || runs[2] != 2)
        fail(ErrorKind::InvalidMarking, "arcs must be contiguous runs in cyclic order top, side, bottom, side");
    std::array<VertexId, 4> corners{};
    int idx = 0;
    int prev = -1;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& s = cyc[(start + k) % n];
        if (label[s.edge] != prev) {
            corners[static_cast<std::size_t>(idx++)] = c.tail(s);
            prev = label[s.edge];
        }
    }
    auto q = make_quad(std::move(c), corners);
    // keep the caller's side names when the boundary walks top -> left -> bottom -> right
    if (runs[1] == 3) std::swap(q.arcs[1], q.arcs[3]);
    return q;
}

// Quad whose ends are the given boundary edge sets; the sides are whatever
// boundary lies between them. Ends must be contiguous and vertex-disjoint.
[[nodiscard]] inline QuadMarking quad_from_ends(Complex2D c, const std::vector<EdgeId>& top,
                                                const std::vector<EdgeId>& bottom, ParentMap parent = {}) {
    const auto cycles = c.boundary_cycles();
    if (cycles.size() != 1) fail(ErrorKind::NotADisk, "quadrilateral must have one boundary component");
    const auto& cyc = cycles[0];
    const auto n = cyc.size();
    std::vector<int> label(c.num_edges(), -1);
    for (auto e : top) label[e] = 0;
    for (auto e : bottom) {
        if (label[e] == 0) fail(ErrorKind::InvalidMarking, "ends overlap");
        label[e] = 2;
    }
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i)
        if (label[cyc[i].edge] == 0 && label[cyc[(i + n - 1) % n].edge] != 0) start = i;
    if (start == n) fail(ErrorKind::InvalidMarking, "top end is empty or covers the boundary");
    std::array<VertexId, 4> corners{};
    int phase = 0; // 0 top, 1 side, 2 bottom, 3 side
    corners[0] = c.tail(cyc[start]);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& s = cyc[(start + k) % n];
        const int l = label[s.edge];
        const int want = (phase == 0 || phase == 2) ? phase : -1;
        if ((l == want) || (want == -1 && l == -1)) continue;
        ++phase;
        if (phase > 3) fail(ErrorKind::InvalidMarking, "ends are not contiguous");
        corners[static_cast<std::size_t>(phase)] = c.tail(s);
        const int now = (phase == 2) ? 2 : -1;
        if (l != now) fail(ErrorKind::InvalidMarking, "ends must be vertex-disjoint contiguous arcs");
    }
    if (phase != 3) fail(ErrorKind::InvalidMarking, "ends must be vertex-disjoint contiguous arcs");
    return make_quad(std::move(c), corners, std::move(parent));
}

// Annulus between the depth-`inner_depth` and depth-`outer_depth` stars of v.
[[nodiscard]] inline RingMarking extract_vertex_annulus(const Complex2D& c, VertexId v, int inner_depth,
                                                        int outer_depth) {
    if (v >= c.num_vertices()) fail(ErrorKind::UnknownVertex, "vertex " + std::to_string(v));
    if (inner_depth < 1 || inner_depth >= outer_depth)
        fail(ErrorKind::InvalidArgument, "need 1 <= inner_depth < outer_depth");
    const auto inner_faces = star_faces(c, v, inner_depth);
    const auto outer_faces = star_faces(c, v, outer_depth);
    try {
        if (!is_disk(subcomplex(c, inner_faces).complex) || !is_disk(subcomplex(c, outer_faces).complex))
            fail(ErrorKind::NotAnAnnulus, "star of vertex " + std::to_string(v) + " is not a disk");
        std::vector<FaceId> ring;
        std::set_difference(outer_faces.begin(), outer_faces.end(), inner_faces.begin(), inner_faces.end(),
                            std::back_inserter(ring));
        auto sub = subcomplex(c, ring);
        const auto cycles = sub.complex.boundary_cycles();
        if (cycles.size() != 2) fail(ErrorKind::NotAnAnnulus, "region is not an annulus");
        // inner cycle: its edges bound a face of the inner star in the parent
        std::vector<bool> in_inner(c.num_faces(), false);
        for (auto f : inner_faces) in_inner[f] = true;
        auto touches_inner = [&](const std::vector<SignedEdge>& cyc) {
            const auto pe = sub.parent.edges[cyc.front().edge];
            for (auto f : c.edge_faces(pe))
                if (in_inner[f]) return true;
            return false;
        };
        const bool first_inner = touches_inner(cycles[0]);
        const auto& ic = first_inner ? cycles[0] : cycles[1];
        const auto& oc = first_inner ? cycles[1] : cycles[0];
        auto parent = sub.parent;
        return make_ring(std::move(sub.complex), detail::cycle_edges(ic), detail::cycle_edges(oc), std::move(parent));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotAnAnnulus) throw;
        fail(ErrorKind::NotAnAnnulus, e.what());
    }
}

// Ring bounded by two boundary cycles of a complex that is already an annulus.
[[nodiscard]] inline RingMarking ring_from_annulus(const Complex2D& c, bool swap_sides = false) {
    const auto cycles = c.boundary_cycles();
    if (cycles.size() != 2) fail(ErrorKind::NotAnAnnulus, "complex has " + std::to_string(cycles.size()) + " boundary cycles");
    auto inner = detail::cycle_edges(cycles[swap_sides ? 1 : 0]);
    auto outer = detail::cycle_edges(cycles[swap_sides ? 0 : 1]);
    return make_ring(c, inner, outer);
}

} // namespace subdiv
