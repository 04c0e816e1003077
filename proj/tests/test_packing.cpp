#include <gtest/gtest.h>

#include <numbers>
#include <regex>

#include "subdiv/packing.hpp"
#include "subdiv/rules.hpp"
#include "subdiv/shapes.hpp"

using namespace subdiv;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent check of a hyperbolic angle from side lengths.
double cosine_rule_angle(double hv, double hu, double hw) {
    const double a = hu + hw, b = hv + hu, c = hv + hw;
    return std::acos((std::cosh(b) * std::cosh(c) - std::cosh(a)) / (std::sinh(b) * std::sinh(c)));
}

std::size_t count_circles(const std::string& s) {
    std::size_t n = 0, pos = 0;
    while ((pos = s.find("<circle", pos)) != std::string::npos) {
        ++n;
        ++pos;
    }
    return n;
}

Packing equal_radii(const Complex2D& c, double r) {
    Packing p;
    p.complex = c;
    p.radii.assign(c.num_vertices(), r);
    return p;
}

} // namespace

TEST(Packing, HyperbolicAngleMatchesCosineRule) {
    for (auto [hv, hu, hw] : {std::tuple{0.3, 0.7, 1.1}, {1.0, 2.0, 0.5}, {0.1, 0.1, 3.0}, {2.5, 0.05, 0.4}}) {
        EXPECT_NEAR(detail::hyp_angle(std::exp(-2 * hv), std::exp(-2 * hu), std::exp(-2 * hw)),
                    cosine_rule_angle(hv, hu, hw), 1e-12);
    }
}

TEST(Packing, UniformNeighborUpdateHitsTarget) {
    // With k equal neighbors at the implied label, the new label gives 2pi.
    for (std::size_t k : {3u, 5u, 6u, 9u}) {
        const double tv = 0.3, tn = 0.6;
        const double sum = static_cast<double>(k) * detail::hyp_angle(tv, tn, tn);
        const double next = detail::uniform_neighbor_update(tv, sum, k);
        EXPECT_NEAR(static_cast<double>(k) * detail::hyp_angle(next, tn, tn), 2 * kPi, 1e-10) << k;
    }
}

TEST(Packing, EqualRadiiAngleSums) {
    const auto hex = shapes::vertex_star(6);
    EXPECT_NEAR(angle_sum(equal_radii(hex, 0.1), 0), 2 * kPi, 1e-12);
    const auto four = shapes::vertex_star(4);
    EXPECT_NEAR(angle_sum(equal_radii(four, 0.1), 0), 4 * kPi / 3, 1e-12);
    EXPECT_THROW((void)angle_sum(equal_radii(four, 0.1), 1), Error);
}

TEST(Packing, SingleTriangle) {
    const auto p = pack(shapes::triangle());
    const double r = std::sqrt(3.0) / (2 + std::sqrt(3.0));
    for (VertexId v = 0; v < 3; ++v) {
        EXPECT_NEAR(p.radii[v], r, 1e-12);
        EXPECT_NEAR(std::abs(p.centers[v]) + p.radii[v], 1.0, 1e-12);
    }
    EXPECT_LT(tangency_discrepancy(p), 1e-12);
    EXPECT_EQ(count_circles(svg(p)), 3u);
}

TEST(Packing, RegularFlower) {
    // A single interior vertex of valence n: by symmetry the petals are equal
    // and the centre circle sits at the origin.
    for (std::size_t n : {3u, 4u, 6u, 7u}) {
        const auto p = pack(shapes::vertex_star(n));
        EXPECT_NEAR(std::abs(p.centers[0]), 0.0, 1e-9);
        for (VertexId v = 2; v <= n; ++v) EXPECT_NEAR(p.radii[v], p.radii[1], 1e-9);
        // Petal tangent to neighbours: sin(pi/n) = R/(R + rho) with R = petal radius.
        const double R = p.radii[1], rho = p.radii[0];
        EXPECT_NEAR(std::sin(kPi / static_cast<double>(n)), R / (R + rho), 1e-9);
        EXPECT_LT(boundary_discrepancy(p), 1e-9);
        EXPECT_LT(max_angle_residual(p), 1e-8);
    }
}

TEST(Packing, BarycentricStageThree) {
    const auto c = subdivide_n(shapes::triangle(), builtin_rule("barycentric"), 3);
    const auto p = pack(c, 1e-10);
    EXPECT_LT(p.residual, 1e-10);
    EXPECT_LT(max_angle_residual(p), 1e-8);
    EXPECT_LT(tangency_discrepancy(p), 1e-6);
    EXPECT_LT(boundary_discrepancy(p), 1e-6);
    for (VertexId v = 0; v < c.num_vertices(); ++v) EXPECT_LE(std::abs(p.centers[v]) + p.radii[v], 1 + 1e-9);
}

TEST(Packing, HexagonalStageFour) {
    const auto c = subdivide_n(shapes::triangle(), builtin_rule("hexagonal"), 4);
    const auto p = pack(c, 1e-10);
    EXPECT_LT(max_angle_residual(p), 1e-8);
    EXPECT_LT(tangency_discrepancy(p), 1e-6);
}

TEST(Packing, HexagonalRadiiEvenOut) {
    // Largest ratio of tangent radii among circles well inside the disk
    // tends to 1 as the hexagonal grid refines.
    auto neighbor_ratio = [](int n) {
        const auto c = subdivide_n(shapes::triangle(), builtin_rule("hexagonal"), n);
        const auto p = pack(c);
        double m = 1;
        for (const auto& e : c.edges())
            if (std::abs(p.centers[e.a]) < 0.5 && std::abs(p.centers[e.b]) < 0.5)
                m = std::max({m, p.radii[e.a] / p.radii[e.b], p.radii[e.b] / p.radii[e.a]});
        return m;
    };
    const double r3 = neighbor_ratio(3), r4 = neighbor_ratio(4), r5 = neighbor_ratio(5);
    EXPECT_GT(r3, r4);
    EXPECT_GT(r4, r5);
    EXPECT_LT(r5, 1.15);
}

TEST(Packing, PositivelyOriented) {
    const auto c = subdivide_n(shapes::triangle(), builtin_rule("barycentric"), 2);
    const auto p = pack(c);
    for (FaceId f = 0; f < c.num_faces(); ++f) {
        const auto vs = c.face_vertices(f);
        const Point a = p.centers[vs[1]] - p.centers[vs[0]], b = p.centers[vs[2]] - p.centers[vs[0]];
        EXPECT_GT(a.real() * b.imag() - a.imag() * b.real(), 0.0) << f;
    }
}

TEST(Packing, BoundaryOnlyComplex) {
    // Fan of three triangles around a boundary vertex: no interior vertices.
    const auto c = Complex2D::from_polygons(5, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}});
    const auto p = pack(c);
    EXPECT_LT(tangency_discrepancy(p), 1e-12);
    EXPECT_LT(boundary_discrepancy(p), 1e-12);
}

TEST(Packing, Errors) {
    EXPECT_THROW(
        {
            try {
                (void)pack(Complex2D::from_polygons(4, {{0, 1, 2, 3}}));
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::NotATriangulatedDisk);
                throw;
            }
        },
        Error);
    EXPECT_THROW((void)pack(shapes::octahedron()), Error);
    EXPECT_THROW(
        {
            try {
                (void)pack(subdivide_n(shapes::triangle(), builtin_rule("barycentric"), 2), 1e-10, 2);
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::IterationLimit);
                throw;
            }
        },
        Error);
}

TEST(Packing, SvgDeterministic) {
    const auto c = subdivide_n(shapes::triangle(), builtin_rule("barycentric"), 2);
    const auto a = svg(pack(c), ColorBy::type);
    const auto b = svg(pack(c), ColorBy::type);
    EXPECT_EQ(a, b);
    EXPECT_EQ(count_circles(a), c.num_vertices());
    EXPECT_NE(a.find("viewBox=\"-1 -1 2 2\""), std::string::npos);
    EXPECT_TRUE(std::regex_search(a, std::regex("data-vertex=\"0\" cx=\"-?[0-9]\\.[0-9]{4}\"")));
    const auto staged = svg(pack(c), ColorBy::stage, {3, 7});
    EXPECT_EQ(count_circles(staged), c.num_vertices());
}

TEST(Packing, RepeatRunsAgree) {
    const auto c = subdivide_n(shapes::triangle(), builtin_rule("hexagonal"), 3);
    const auto a = pack(c), b = pack(c);
    for (VertexId v = 0; v < c.num_vertices(); ++v) EXPECT_NEAR(a.radii[v], b.radii[v], 1e-9);
}
