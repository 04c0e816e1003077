#include <gtest/gtest.h>

#include "subdiv/complex.hpp"
#include "subdiv/marking.hpp"
#include "subdiv/shapes.hpp"

using namespace subdiv;

namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::IoError;
}

} // namespace

TEST(Complex, OctahedronCounts) {
    const auto c = shapes::octahedron();
    EXPECT_EQ(c.num_vertices(), 6u);
    EXPECT_EQ(c.num_edges(), 12u);
    EXPECT_EQ(c.num_faces(), 8u);
    EXPECT_EQ(c.euler_characteristic(), 2);
    EXPECT_TRUE(c.is_closed());
    for (VertexId v = 0; v < 6; ++v) EXPECT_EQ(c.valence(v), 4u);
}

TEST(Complex, RejectsStrayEdge) {
    std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 0}, {2, 3}};
    std::vector<Face> faces{Face{{{0, false}, {1, false}, {2, false}}}};
    EXPECT_EQ(kind_of([&] { (void)Complex2D::build(4, edges, faces, {}); }), ErrorKind::InvalidEdge);
}

TEST(Complex, RejectsEdgeOnThreeFaces) {
    EXPECT_EQ(kind_of([] { (void)Complex2D::from_polygons(5, {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}}, {}); }),
              ErrorKind::NonManifold);
}

TEST(Complex, RejectsPinchedVertex) {
    // two triangles meeting only at vertex 0
    EXPECT_EQ(kind_of([] { (void)Complex2D::from_polygons(5, {{0, 1, 2}, {0, 3, 4}}, {}); }), ErrorKind::NonManifold);
}

TEST(Complex, RejectsOpenFace) {
    std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}};
    std::vector<Face> faces{Face{{{0, false}, {1, false}, {2, false}}}};
    EXPECT_EQ(kind_of([&] { (void)Complex2D::build(4, edges, faces, {}); }), ErrorKind::InvalidFace);
}

TEST(Complex, RejectsMixedOrientation) {
    EXPECT_EQ(kind_of([] { (void)Complex2D::from_polygons(4, {{0, 1, 2}, {0, 1, 3}}, {}); }),
              ErrorKind::InconsistentOrientation);
}

TEST(Complex, RejectsFaceCitingMissingEdge) {
    std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 0}};
    std::vector<Face> faces{Face{{{0, false}, {1, false}, {7, false}}}};
    EXPECT_EQ(kind_of([&] { (void)Complex2D::build(3, edges, faces, {}); }), ErrorKind::DanglingEdge);
}

TEST(Complex, StarOfInteriorVertexIsDisk) {
    const auto c = shapes::vertex_star(6);
    const auto s = star(c, 0);
    EXPECT_EQ(s.sub.complex.num_faces(), 6u);
    EXPECT_TRUE(is_disk(s.sub.complex));
    EXPECT_EQ(s.link.size(), 6u);
}

TEST(Complex, DualOfOctahedronIsCube) {
    const auto d = dual_tiling(shapes::octahedron());
    EXPECT_EQ(d.num_vertices(), 8u);
    EXPECT_EQ(d.num_edges(), 12u);
    EXPECT_EQ(d.num_faces(), 6u);
    for (FaceId f = 0; f < d.num_faces(); ++f) EXPECT_EQ(d.face(f).boundary.size(), 4u);
    for (VertexId v = 0; v < d.num_vertices(); ++v) EXPECT_EQ(d.valence(v), 3u);
    EXPECT_EQ(kind_of([] { (void)dual_tiling(shapes::vertex_star(5)); }), ErrorKind::HasBoundary);
}

TEST(Complex, DualOfDualIsIsomorphic) {
    const auto c = shapes::octahedron();
    EXPECT_TRUE(isomorphic(dual_tiling(dual_tiling(c)), c));
    EXPECT_FALSE(isomorphic(dual_tiling(c), c));
}

TEST(Complex, BlowUpKeepsEulerCharacteristic) {
    for (const auto& c : {shapes::octahedron(), shapes::tetrahedron(), shapes::vertex_star(5),
                          shapes::two_triangle_square()}) {
        const auto b = blow_up_vertices(c);
        EXPECT_EQ(b.euler_characteristic(), c.euler_characteristic());
    }
    const auto b = blow_up_vertices(shapes::octahedron());
    EXPECT_EQ(b.num_faces(), 8u + 6u);
    for (VertexId v = 0; v < b.num_vertices(); ++v) EXPECT_EQ(b.valence(v), 3u);
}

TEST(Complex, IsomorphismIgnoresRelabeling) {
    const auto a = Complex2D::from_polygons(4, {{0, 1, 2}, {0, 2, 3}}, {});
    const auto b = Complex2D::from_polygons(4, {{3, 2, 1}, {3, 1, 0}}, {});
    EXPECT_TRUE(isomorphic(a, b));
    EXPECT_FALSE(isomorphic(a, shapes::triangle()));
}

TEST(Complex, AdjacencyModes) {
    const auto c = shapes::vertex_star(6);
    const auto e = adjacency_graph(c, Adjacency::edge);
    const auto v = adjacency_graph(c, Adjacency::vertex);
    for (FaceId f = 0; f < 6; ++f) {
        EXPECT_EQ(e[f].size(), 2u);
        EXPECT_EQ(v[f].size(), 5u);
    }
}

TEST(Complex, FacesAroundFollowRotation) {
    const auto c = shapes::vertex_star(5);
    const auto fs = faces_around(c, 0);
    ASSERT_EQ(fs.size(), 5u);
    for (std::size_t i = 0; i < fs.size(); ++i) {
        // consecutive faces share an edge at the center
        const auto a = c.face_vertices(fs[i]);
        const auto b = c.face_vertices(fs[(i + 1) % fs.size()]);
        int shared = 0;
        for (auto x : a)
            for (auto y : b) shared += x == y;
        EXPECT_EQ(shared, 2);
    }
}

TEST(Marking, BarycentricSquareAnnulus) {
    for (int n : {3, 4, 6}) {
        const auto r = shapes::barycentric_square_annulus(n);
        EXPECT_EQ(r.complex.num_faces(), static_cast<std::size_t>(4 * n));
        EXPECT_EQ(r.inner.size(), static_cast<std::size_t>(2 * n));
        EXPECT_EQ(r.outer.size(), static_cast<std::size_t>(2 * n));
    }
}

TEST(Marking, ExtractedAnnulusFromStar) {
    const auto grid = shapes::square_grid(4, 4, true, [](int, int) { return true; });
    const auto r = extract_vertex_annulus(grid, 12, 1, 2);
    EXPECT_EQ(r.complex.euler_characteristic(), 0);
    EXPECT_FALSE(r.inner.empty());
    EXPECT_EQ(kind_of([&] { (void)extract_vertex_annulus(grid, 0, 1, 2); }), ErrorKind::NotAnAnnulus);
}

TEST(Marking, QuadArcsNonEmpty) {
    const auto q = shapes::two_triangle_square_quad();
    for (const auto& a : q.arcs) EXPECT_EQ(a.size(), 1u);
    EXPECT_EQ(kind_of([] { (void)make_quad(shapes::two_triangle_square(), {0, 1, 1, 3}); }), ErrorKind::InvalidMarking);
}

TEST(Marking, RingRejectsDisk) {
    EXPECT_EQ(kind_of([] { (void)make_ring(shapes::vertex_star(4), {}, {}); }), ErrorKind::NotAnAnnulus);
}

TEST(Marking, GridQuadSides) {
    const auto g = shapes::square_grid(3, 2);
    const auto q = shapes::grid_quad(g, 3, 2);
    EXPECT_EQ(q.top().size(), 3u);
    EXPECT_EQ(q.bottom().size(), 3u);
    EXPECT_EQ(q.left().size(), 2u);
    EXPECT_EQ(q.right().size(), 2u);
}
