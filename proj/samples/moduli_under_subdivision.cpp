// Moduli of a square and of an annulus as the tiling is refined, and an SVG
// of the packed barycentric triangle.
#include <cstdio>

#include "subdiv/subdiv.hpp"

using namespace subdiv;

int main() {
    const auto bary = builtin_rule("barycentric");
    const auto hex = builtin_rule("hexagonal");

    for (int stage = 0; stage <= 3; ++stage) {
        const auto q = make_quad(subdivide_n(shapes::two_triangle_square(), bary, stage), {0, 1, 2, 3});
        std::printf("square, barycentric stage %d: M_sup = %.9f\n", stage, modulus_sup(q, Mode::vertex).value);
    }

    // rings around the center of a valence-6 star
    for (const auto* r : {&bary, &hex}) {
        const auto rep = axiom_probe_vertex(2, *r, shapes::vertex_star(6), 0, 4);
        std::printf("%s rings:", r->name.c_str());
        for (double m : rep.moduli) std::printf(" %.6f", m);
        std::printf("  layered %.6f\n", rep.layered.back());
    }

    const auto p = pack(subdivide_n(shapes::triangle(), bary, 3));
    std::printf("packing: %zu circles, residual %.2e, tangency %.2e\n", p.radii.size(), max_angle_residual(p),
                tangency_discrepancy(p));
    render_svg(p, "barycentric_3.svg", ColorBy::type);
}
