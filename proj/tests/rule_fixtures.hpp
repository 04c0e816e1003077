#pragma once

#include "subdiv/rules.hpp"
#include "subdiv/shapes.hpp"

// Two tile types: A splits like the hexagonal rule, B carries one B child at
// its first corner, so a vertex sitting at the first corner of two B tiles
// gains two faces per stage.
inline subdiv::SubdivisionRule linear_growth_rule() {
    using namespace subdiv;
    SubdivisionRule r;
    r.name = "linear";
    r.edge_types["e"] = {"e", {"e", "e"}};
    r.tiles["A"] = make_pattern("A", {"e", "e", "e"}, 6, {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}, {3, 4, 5}},
                                {"A", "A", "A", "A"}, {{0, 3, 1}, {1, 4, 2}, {2, 5, 0}});
    r.tiles["B"] = make_pattern("B", {"e", "e", "e"}, 7,
                                {{0, 3, 6}, {0, 6, 5}, {3, 1, 4}, {5, 4, 2}, {3, 4, 6}, {4, 5, 6}},
                                {"B", "A", "A", "A", "A", "A"}, {{0, 3, 1}, {1, 4, 2}, {2, 5, 0}});
    return validate_rule(std::move(r));
}

// Hexagon star whose faces 0 and 3 are B tiles with the center at their first corner.
inline subdiv::Complex2D linear_growth_seed() {
    using namespace subdiv;
    const auto s = shapes::vertex_star(6);
    std::vector<std::vector<VertexId>> polys;
    for (FaceId f = 0; f < s.num_faces(); ++f) polys.push_back(s.face_vertices(f));
    return Complex2D::from_polygons(7, polys, {"B", "A", "A", "B", "A", "A"});
}
