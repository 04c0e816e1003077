#include <gtest/gtest.h>

#include "rule_fixtures.hpp"
#include "subdiv/rules.hpp"
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

TEST(Rules, BarycentricCounts) {
    const auto r = builtin_barycentric();
    const auto c = shapes::octahedron();
    const auto s = subdivide(c, r);
    EXPECT_EQ(s.num_vertices(), c.num_vertices() + c.num_edges() + c.num_faces());
    EXPECT_EQ(s.num_faces(), 6 * c.num_faces());
    EXPECT_EQ(s.num_edges(), 2 * c.num_edges() + 6 * c.num_faces());
    EXPECT_EQ(s.euler_characteristic(), 2);
}

TEST(Rules, HexagonalCounts) {
    const auto r = builtin_hexagonal();
    const auto c = shapes::octahedron();
    const auto s = subdivide(c, r);
    EXPECT_EQ(s.num_vertices(), c.num_vertices() + c.num_edges());
    EXPECT_EQ(s.num_faces(), 4 * c.num_faces());
    EXPECT_EQ(s.euler_characteristic(), 2);
}

TEST(Rules, OldVerticesKeepIds) {
    const auto r = builtin_barycentric();
    const auto c = shapes::vertex_star(5);
    const auto s = subdivide(c, r);
    for (VertexId v = 0; v < c.num_vertices(); ++v) EXPECT_EQ(s.is_boundary_vertex(v), c.is_boundary_vertex(v));
    EXPECT_EQ(s.valence(0), 10u);
}

TEST(Rules, Deterministic) {
    const auto r = builtin_barycentric();
    const auto c = shapes::octahedron();
    EXPECT_TRUE(subdivide_n(c, r, 2) == subdivide_n(c, r, 2));
}

TEST(Rules, EulerCharacteristicPreserved) {
    for (const auto& r : {builtin_barycentric(), builtin_hexagonal()})
        for (const auto& c : {shapes::octahedron(), shapes::tetrahedron(), shapes::vertex_star(7),
                              shapes::annulus_grid(5, 2, true, [](int i, int j) { return (i + j) % 2 == 0; })}) {
            auto s = c;
            for (int i = 0; i < 2; ++i) {
                s = subdivide(s, r);
                EXPECT_EQ(s.euler_characteristic(), c.euler_characteristic());
                EXPECT_EQ(s.boundary_cycles().size(), c.boundary_cycles().size());
            }
        }
}

TEST(Rules, TraceLinksLevels) {
    const auto r = builtin_barycentric();
    const auto c = shapes::two_triangle_square();
    const auto tr = subdivide_n_traced(c, r, 2);
    std::vector<std::size_t> per_root(c.num_faces(), 0);
    for (auto f : tr.face_root) ++per_root[f];
    for (auto n : per_root) EXPECT_EQ(n, 36u);
    for (EdgeId e = 0; e < c.num_edges(); ++e) {
        const auto& d = tr.edge_descendants[e];
        ASSERT_EQ(d.size(), 4u);
        EXPECT_EQ(tr.complex.edge(d.front()).a, c.edge(e).a);
        EXPECT_EQ(tr.complex.edge(d.back()).b, c.edge(e).b);
        for (std::size_t i = 0; i + 1 < d.size(); ++i)
            EXPECT_EQ(tr.complex.edge(d[i]).b, tr.complex.edge(d[i + 1]).a);
    }
}

TEST(Rules, GrowthClasses) {
    const auto star = shapes::vertex_star(6);
    const auto bary = classify_growth(builtin_barycentric(), star, 0, 4);
    EXPECT_EQ(bary.kind, GrowthKind::exponential);
    EXPECT_DOUBLE_EQ(bary.multiplier, 2.0);
    EXPECT_EQ(bary.valences, (std::vector<std::size_t>{12, 24, 48, 96}));

    const auto hex = classify_growth(builtin_hexagonal(), star, 0, 4);
    EXPECT_EQ(hex.kind, GrowthKind::bounded);

    const auto lin = classify_growth(linear_growth_rule(), linear_growth_seed(), 0, 5);
    EXPECT_EQ(lin.kind, GrowthKind::linear);
    EXPECT_EQ(lin.addend, 2);
    EXPECT_EQ(lin.valences, (std::vector<std::size_t>{8, 10, 12, 14, 16}));
}

TEST(Rules, GrowthErrors) {
    const auto star = shapes::vertex_star(6);
    EXPECT_EQ(kind_of([&] { (void)classify_growth(builtin_barycentric(), star, 1, 4); }), ErrorKind::NotInterior);
    EXPECT_EQ(kind_of([&] { (void)classify_growth(builtin_barycentric(), star, 0, 3); }), ErrorKind::InvalidArgument);
}

TEST(Rules, SequenceFallback) {
    EXPECT_EQ(classify_growth_sequence({3, 4, 6, 9, 13}).kind, GrowthKind::exponential);
    EXPECT_EQ(classify_growth_sequence({5, 5, 5, 5}).kind, GrowthKind::bounded);
}

TEST(Rules, PatternErrors) {
    auto base = [] {
        SubdivisionRule r;
        r.name = "bad";
        r.edge_types["e"] = {"e", {"e", "e"}};
        r.tiles["T"] = make_pattern("T", {"e", "e", "e"}, 6, {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}, {3, 4, 5}},
                                    {"T", "T", "T", "T"}, {{0, 3, 1}, {1, 4, 2}, {2, 5, 0}});
        return r;
    };
    {
        auto r = base();
        r.tiles["T"].boundary_map[0].pop_back();
        EXPECT_EQ(kind_of([&] { (void)validate_rule(r); }), ErrorKind::EdgeMismatch);
    }
    {
        auto r = base();
        r.tiles["T"].pattern = Complex2D::from_polygons(6, {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}, {3, 4, 5}},
                                                         {"T", "T", "U", "T"});
        EXPECT_EQ(kind_of([&] { (void)validate_rule(r); }), ErrorKind::UnknownTileType);
    }
    {
        auto r = base();
        r.tiles["T"].boundary[1] = "zz";
        EXPECT_EQ(kind_of([&] { (void)validate_rule(r); }), ErrorKind::UnknownEdgeType);
    }
    {
        auto r = base();
        // an annulus is not a disk
        r.tiles["T"].pattern = shapes::annulus_grid(3, 1, true, [](int, int) { return true; });
        EXPECT_EQ(kind_of([&] { (void)validate_rule(r); }), ErrorKind::NotADisk);
    }
}

TEST(Rules, GluingFailure) {
    SubdivisionRule r;
    r.name = "two";
    r.edge_types["e"] = {"e", {"e", "e"}};
    r.edge_types["f"] = {"f", {"f", "f"}};
    r.tiles["P"] = make_pattern("P", {"e", "e", "e"}, 6, {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}, {3, 4, 5}},
                                {"P", "P", "P", "P"}, {{0, 3, 1}, {1, 4, 2}, {2, 5, 0}});
    r.tiles["Q"] = make_pattern("Q", {"f", "f", "f"}, 6, {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}, {3, 4, 5}},
                                {"Q", "Q", "Q", "Q"}, {{0, 3, 1}, {1, 4, 2}, {2, 5, 0}});
    r = validate_rule(r);
    const auto c = Complex2D::from_polygons(4, {{0, 1, 2}, {0, 2, 3}}, {"P", "Q"});
    EXPECT_EQ(kind_of([&] { (void)subdivide(c, r); }), ErrorKind::GluingFailure);
    const auto missing = Complex2D::from_polygons(4, {{0, 1, 2}, {0, 2, 3}}, {"P", "R"});
    EXPECT_EQ(kind_of([&] { (void)subdivide(missing, r); }), ErrorKind::MissingTileType);
}

TEST(Rules, BaseCornerRotatesPattern) {
    auto r = linear_growth_rule();
    r.tiles["B"].base_corner = 1;
    r = validate_rule(r);
    // with the rotation the center no longer sits at the B child's corner
    const auto g = classify_growth(r, linear_growth_seed(), 0, 4);
    EXPECT_EQ(g.kind, GrowthKind::bounded);
}
