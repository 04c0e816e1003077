#include <gtest/gtest.h>

#include "rule_fixtures.hpp"
#include "subdiv/io.hpp"
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

bool same_rule(const SubdivisionRule& a, const SubdivisionRule& b) {
    if (a.name != b.name || a.tiles.size() != b.tiles.size()) return false;
    for (const auto& [n, e] : a.edge_types)
        if (!b.edge_types.count(n) || b.edge_types.at(n).splits_into != e.splits_into) return false;
    for (const auto& [n, t] : a.tiles) {
        if (!b.tiles.count(n)) return false;
        const auto& u = b.tiles.at(n);
        if (t.boundary != u.boundary || t.boundary_map != u.boundary_map || t.base_corner != u.base_corner) return false;
        if (!isomorphic(t.pattern, u.pattern) || !(t.pattern == u.pattern)) return false;
    }
    return true;
}

} // namespace

TEST(Io, ComplexRoundTrip) {
    for (const auto& c : {shapes::octahedron(), shapes::vertex_star(5), shapes::square_grid(2, 3)}) {
        const auto j = complex_to_json(c);
        const auto back = complex_from_json(parse_json(dump_json(j)));
        EXPECT_TRUE(back == c);
    }
}

TEST(Io, FaceIndicesAreSignedOneBased) {
    const auto j = parse_json(R"({"vertices":[0,1,2],"edges":[[0,1],[2,1],[0,2]],"faces":[[1,-2,-3]]})");
    const auto c = complex_from_json(j);
    EXPECT_EQ(c.face_vertices(0), (std::vector<VertexId>{0, 1, 2}));
}

TEST(Io, RejectsUnknownField) {
    const auto j = parse_json(R"({"vertices":[0,1,2],"edges":[[0,1],[1,2],[2,0]],"faces":[[1,2,3]],"colour":1})");
    EXPECT_EQ(kind_of([&] { (void)complex_from_json(j); }), ErrorKind::InvalidDocument);
}

TEST(Io, RejectsMissingEdge) {
    const auto j = parse_json(R"({"vertices":[0,1,2],"edges":[[0,1],[1,2],[2,0]],"faces":[[1,2,9]]})");
    EXPECT_EQ(kind_of([&] { (void)complex_from_json(j); }), ErrorKind::DanglingEdge);
}

TEST(Io, RejectsSparseVertexIds) {
    const auto j = parse_json(R"({"vertices":[0,1,5],"edges":[[0,1],[1,5],[5,0]],"faces":[[1,2,3]]})");
    EXPECT_EQ(kind_of([&] { (void)complex_from_json(j); }), ErrorKind::InvalidDocument);
}

TEST(Io, MarkingsRoundTrip) {
    const auto ring = shapes::barycentric_square_annulus(4);
    const auto d = document_from_json(parse_json(dump_json(document_to_json(ring.complex, ring))));
    const auto& r = std::get<RingMarking>(d.marking);
    EXPECT_EQ(r.inner, ring.inner);
    EXPECT_EQ(r.outer, ring.outer);

    const auto quad = shapes::grid_quad(shapes::square_grid(3, 2), 3, 2);
    const auto dq = document_from_json(parse_json(dump_json(document_to_json(quad.complex, quad))));
    const auto& q = std::get<QuadMarking>(dq.marking);
    EXPECT_EQ(q.arcs, quad.arcs);
}

TEST(Io, BuiltinRulesRoundTrip) {
    for (const auto& r : {builtin_barycentric(), builtin_hexagonal(), linear_growth_rule()}) {
        const auto back = rule_from_json(parse_json(dump_json(rule_to_json(r))));
        EXPECT_TRUE(same_rule(r, back)) << r.name;
    }
}

TEST(Io, LinearRuleFile) {
    const auto r = resolve_rule(std::string(SUBDIV_TEST_DATA) + "/linear_rule.json");
    EXPECT_TRUE(same_rule(r, linear_growth_rule()));
    const auto g = classify_growth(r, linear_growth_seed(), 0, 4);
    EXPECT_EQ(g.kind, GrowthKind::linear);
}

TEST(Io, MissingFileIsIoError) {
    EXPECT_EQ(kind_of([] { (void)load_document("/nonexistent/complex.json"); }), ErrorKind::IoError);
    EXPECT_EQ(category_of(ErrorKind::IoError), ErrorCategory::io);
}

TEST(Io, FloatsUseSeventeenDigits) {
    EXPECT_EQ(dump_json(json(0.1), -1), "0.10000000000000001");
    EXPECT_EQ(dump_json(json(2.0), -1), "2.0");
    EXPECT_EQ(dump_json(json::array({1, 2}), -1), "[1,2]");
}

TEST(Io, SubdivideDeterministicText) {
    const auto r = builtin_barycentric();
    const auto a = dump_json(complex_to_json(subdivide_n(shapes::octahedron(), r, 2)));
    const auto b = dump_json(complex_to_json(subdivide_n(shapes::octahedron(), r, 2)));
    EXPECT_EQ(a, b);
}
