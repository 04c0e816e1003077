#pragma once

#include <random>
#include <string>
#include <vector>

#include "subdiv/complex.hpp"
#include "subdiv/marking.hpp"

// Small named complexes used as seeds, fixtures and CLI presets.
namespace subdiv::shapes {

[[nodiscard]] inline Complex2D triangle() {
    return Complex2D::from_polygons(3, {{0, 1, 2}}, {"T"});
}

// Two triangles sharing the edge 0-2; boundary walks 0-1-2-3.
[[nodiscard]] inline Complex2D two_triangle_square() {
    return Complex2D::from_polygons(4, {{0, 1, 2}, {0, 2, 3}}, {"T", "T"});
}

// Corners 0,1,2,3 in boundary order: top = 0-1, bottom = 2-3.
[[nodiscard]] inline QuadMarking two_triangle_square_quad() {
    return make_quad(two_triangle_square(), {0, 1, 2, 3});
}

// n triangles around vertex 0, link vertices 1..n.
[[nodiscard]] inline Complex2D vertex_star(int n) {
    std::vector<std::vector<VertexId>> polys;
    for (int i = 0; i < n; ++i)
        polys.push_back({0, static_cast<VertexId>(1 + i), static_cast<VertexId>(1 + (i + 1) % n)});
    return Complex2D::from_polygons(static_cast<std::size_t>(n) + 1, polys,
                                    std::vector<std::string>(static_cast<std::size_t>(n), "T"));
}

[[nodiscard]] inline Complex2D tetrahedron() {
    return Complex2D::from_polygons(4, {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}},
                                    std::vector<std::string>(4, "T"));
}

// Poles 0 (top) and 5 (bottom), equator 1..4.
[[nodiscard]] inline Complex2D octahedron() {
    std::vector<std::vector<VertexId>> polys;
    for (VertexId i = 0; i < 4; ++i) {
        const VertexId a = 1 + i, b = 1 + (i + 1) % 4;
        polys.push_back({0, a, b});
        polys.push_back({5, b, a});
    }
    return Complex2D::from_polygons(6, polys, std::vector<std::string>(8, "T"));
}

// w x h grid of unit squares; vertex (i, j) = j*(w+1)+i with row 0 on top.
// With `triangulate`, each square is split along a diagonal chosen by `diag(i, j)`.
template <typename DiagFn>
[[nodiscard]] Complex2D square_grid(int w, int h, bool triangulate, DiagFn diag) {
    auto id = [&](int i, int j) { return static_cast<VertexId>(j * (w + 1) + i); };
    std::vector<std::vector<VertexId>> polys;
    std::vector<std::string> types;
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i) {
            const VertexId a = id(i, j), b = id(i, j + 1), c = id(i + 1, j + 1), d = id(i + 1, j);
            if (!triangulate) {
                polys.push_back({a, b, c, d});
                types.push_back("Q");
            } else if (diag(i, j)) {
                polys.push_back({a, b, c});
                polys.push_back({a, c, d});
                types.insert(types.end(), {"T", "T"});
            } else {
                polys.push_back({a, b, d});
                polys.push_back({b, c, d});
                types.insert(types.end(), {"T", "T"});
            }
        }
    return Complex2D::from_polygons(static_cast<std::size_t>((w + 1) * (h + 1)), polys, types);
}

[[nodiscard]] inline Complex2D square_grid(int w, int h) {
    return square_grid(w, h, false, [](int, int) { return false; });
}

// Quad on a grid: top = row 0, bottom = row h.
[[nodiscard]] inline QuadMarking grid_quad(const Complex2D& grid, int w, int h) {
    auto id = [&](int i, int j) { return static_cast<VertexId>(j * (w + 1) + i); };
    // boundary walk direction follows the face orientation (a, b, c, d) = down, right, up
    // so the walk goes counter to "top left -> top right"; pick corners in walk order.
    const auto cyc = grid.boundary_cycles().at(0);
    const VertexId tl = id(0, 0), tr = id(w, 0), br = id(w, h), bl = id(0, h);
    // Determine walk direction along the top row.
    bool top_forward = false;
    for (const auto& s : cyc)
        if (grid.tail(s) == tl) top_forward = grid.head(s) == id(1, 0);
    if (top_forward) return make_quad(grid, {tl, tr, br, bl});
    return make_quad(grid, {tr, tl, bl, br});
}

// Annulus of k columns and h rows of squares; row 0 is the inner cycle.
// diag(i, j) picks the split diagonal when triangulated.
template <typename DiagFn>
[[nodiscard]] Complex2D annulus_grid(int k, int h, bool triangulate, DiagFn diag) {
    auto id = [&](int i, int j) { return static_cast<VertexId>(j * k + ((i % k) + k) % k); };
    std::vector<std::vector<VertexId>> polys;
    std::vector<std::string> types;
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < k; ++i) {
            const VertexId a = id(i, j), b = id(i, j + 1), c = id(i + 1, j + 1), d = id(i + 1, j);
            if (!triangulate) {
                polys.push_back({a, b, c, d});
                types.push_back("Q");
            } else if (diag(i, j)) {
                polys.push_back({a, b, c});
                polys.push_back({a, c, d});
                types.insert(types.end(), {"T", "T"});
            } else {
                polys.push_back({a, b, d});
                polys.push_back({b, c, d});
                types.insert(types.end(), {"T", "T"});
            }
        }
    return Complex2D::from_polygons(static_cast<std::size_t>(k * (h + 1)), polys, types);
}

[[nodiscard]] inline RingMarking annulus_grid_ring(const Complex2D& annulus, int k) {
    std::vector<EdgeId> inner, outer;
    for (EdgeId e = 0; e < annulus.num_edges(); ++e) {
        if (!annulus.is_boundary_edge(e)) continue;
        const auto& ed = annulus.edge(e);
        (ed.a < static_cast<VertexId>(k) && ed.b < static_cast<VertexId>(k) ? inner : outer).push_back(e);
    }
    return make_ring(annulus, inner, outer);
}

// Ring of 2n squares (4n triangles) that one barycentric subdivision carves
// around a valence-n vertex, built directly. Inner cycle m_0 b_0 m_1 b_1 ...,
// outer cycle u_0 e_0 u_1 e_1 ...; square i of old triangle i is
// (m_i, u_i, e_i, b_i) split along u_i-b_i, the other (b_i, e_i, u_{i+1}, m_{i+1})
// split along b_i-u_{i+1}.
[[nodiscard]] inline RingMarking barycentric_square_annulus(int n) {
    auto m = [&](int i) { return static_cast<VertexId>(4 * ((i % n + n) % n) + 0); };
    auto b = [&](int i) { return static_cast<VertexId>(4 * ((i % n + n) % n) + 1); };
    auto u = [&](int i) { return static_cast<VertexId>(4 * ((i % n + n) % n) + 2); };
    auto e = [&](int i) { return static_cast<VertexId>(4 * ((i % n + n) % n) + 3); };
    std::vector<std::vector<VertexId>> polys;
    for (int i = 0; i < n; ++i) {
        // old triangle (v, u_i, u_{i+1}) oriented v -> u_i -> u_{i+1}
        polys.push_back({m(i), u(i), b(i)});
        polys.push_back({u(i), e(i), b(i)});
        polys.push_back({e(i), u(i + 1), b(i)});
        polys.push_back({u(i + 1), m(i + 1), b(i)});
    }
    auto c = Complex2D::from_polygons(static_cast<std::size_t>(4 * n), polys,
                                      std::vector<std::string>(static_cast<std::size_t>(4 * n), "T"));
    std::vector<EdgeId> inner, outer;
    for (EdgeId id = 0; id < c.num_edges(); ++id) {
        if (!c.is_boundary_edge(id)) continue;
        const auto& ed = c.edge(id);
        const bool a_inner = ed.a % 4 < 2, b_inner = ed.b % 4 < 2;
        (a_inner && b_inner ? inner : outer).push_back(id);
    }
    return make_ring(std::move(c), inner, outer);
}

} // namespace subdiv::shapes
