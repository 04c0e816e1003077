#include <gtest/gtest.h>

#include <random>

#include "subdiv/modulus.hpp"
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

QuadMarking single_tile_quad() {
    return make_quad(Complex2D::from_polygons(4, {{0, 1, 2, 3}}, {"Q"}), {0, 1, 2, 3});
}

WeightFunction uniform(Carrier c, std::size_t n, double v = 1.0) { return {c, std::vector<double>(n, v)}; }

} // namespace

TEST(Modulus, AreaExamples) {
    EXPECT_EQ(area({Carrier::tiles, {1, 1, 1}}), 3.0);
    EXPECT_EQ(area({Carrier::tiles, {0, 0, 0}}), 0.0);
    EXPECT_EQ(area({Carrier::tiles, {3, 4}}), 25.0);
}

TEST(Modulus, HeightExamples) {
    const auto q = single_tile_quad();
    EXPECT_EQ(height(q, uniform(Carrier::tiles, 1), Mode::skinny), 1.0);
    const auto ladder = shapes::grid_quad(shapes::square_grid(1, 2), 1, 2);
    EXPECT_EQ(height(ladder, uniform(Carrier::tiles, 2), Mode::skinny), 2.0);
    EXPECT_EQ(kind_of([&] { (void)height(q, uniform(Carrier::vertices, 4), Mode::skinny); }), ErrorKind::CarrierMismatch);
    EXPECT_EQ(kind_of([&] { (void)height(q, uniform(Carrier::tiles, 3), Mode::fat); }), ErrorKind::CarrierMismatch);
}

TEST(Modulus, CircumferenceOfTileCycle) {
    const auto ring = shapes::annulus_grid_ring(shapes::annulus_grid(4, 1, false, [](int, int) { return false; }), 4);
    EXPECT_EQ(circumference(ring, uniform(Carrier::tiles, 4), Mode::skinny), 4.0);
    EXPECT_EQ(circumference(ring, uniform(Carrier::tiles, 4, 2.5), Mode::skinny), 10.0);
}

TEST(Modulus, BarycentricAnnulusUniformHeight) {
    // height of the ring equals the height of one square under uniform weights
    for (int n : {3, 5}) {
        const auto ring = shapes::barycentric_square_annulus(n);
        const auto w = uniform(Carrier::vertices, ring.complex.num_vertices());
        EXPECT_EQ(height(ring, w, Mode::vertex), 2.0);
        const auto sq = shapes::two_triangle_square_quad();
        EXPECT_EQ(height(sq, uniform(Carrier::vertices, 4), Mode::vertex), 2.0);
    }
}

TEST(Modulus, Homogeneity) {
    const auto ring = shapes::barycentric_square_annulus(4);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    WeightFunction w{Carrier::vertices, {}};
    for (std::size_t i = 0; i < ring.complex.num_vertices(); ++i) w.weights.push_back(d(rng));
    auto scaled = w;
    for (auto& x : scaled.weights) x *= 3.25;
    const double h = height(ring, w, Mode::vertex), hs = height(ring, scaled, Mode::vertex);
    const double c = circumference(ring, w, Mode::vertex), cs = circumference(ring, scaled, Mode::vertex);
    EXPECT_NEAR(hs, 3.25 * h, 1e-12);
    EXPECT_NEAR(cs, 3.25 * c, 1e-12);
    EXPECT_NEAR(area(scaled), 3.25 * 3.25 * area(w), 1e-12);
}

TEST(Modulus, SingleTileQuad) {
    const auto q = single_tile_quad();
    EXPECT_NEAR(modulus_sup(q, Mode::skinny).value, 1.0, 1e-9);
    EXPECT_NEAR(brute_force_modulus(q, Mode::skinny).value, 1.0, 1e-9);
}

TEST(Modulus, TwoTriangleSquareVertexMode) {
    const auto q = shapes::two_triangle_square_quad();
    EXPECT_NEAR(modulus_sup(q, Mode::vertex).value, 1.0, 1e-7);
    EXPECT_NEAR(brute_force_modulus(q, Mode::vertex).value, 1.0, 1e-9);
}

TEST(Modulus, Ladders) {
    const auto tall = shapes::grid_quad(shapes::square_grid(1, 3), 1, 3);
    const auto wide = shapes::grid_quad(shapes::square_grid(3, 1), 3, 1);
    EXPECT_NEAR(modulus_sup(tall, Mode::skinny).value, 3.0, 1e-6);
    EXPECT_NEAR(modulus_sup(wide, Mode::skinny).value, 1.0 / 3.0, 1e-7);
    EXPECT_NEAR(modulus_sup(tall, Mode::skinny).value, brute_force_modulus(tall, Mode::skinny).value, 1e-6);
}

TEST(Modulus, TileCycleRing) {
    for (int k : {3, 5, 8}) {
        const auto ring = shapes::annulus_grid_ring(shapes::annulus_grid(k, 1, false, [](int, int) { return false; }), k);
        EXPECT_NEAR(modulus_inf(ring, Mode::skinny).value, 1.0 / k, 1e-8);
        EXPECT_NEAR(brute_force_modulus(ring, Mode::skinny, Which::inf).value, 1.0 / k, 1e-9);
    }
}

TEST(Modulus, BarycentricSquareAnnulus) {
    for (int n : {3, 4, 6, 8}) {
        const auto ring = shapes::barycentric_square_annulus(n);
        EXPECT_NEAR(modulus_sup(ring, Mode::vertex).value, 1.0 / n, 1e-7) << n;
        EXPECT_NEAR(modulus_inf(ring, Mode::vertex).value, 1.0 / n, 1e-7) << n;
    }
}

TEST(Modulus, CertificatesAndHistory) {
    const auto ring = shapes::barycentric_square_annulus(5);
    for (auto which : {Which::sup, Which::inf}) {
        const auto r = which == Which::sup ? modulus_sup(ring, Mode::vertex) : modulus_inf(ring, Mode::vertex);
        EXPECT_GE(r.residual, -1e-7);
        for (std::size_t i = 1; i < r.objective_history.size(); ++i)
            EXPECT_GE(r.objective_history[i], r.objective_history[i - 1] - 1e-12);
        ASSERT_FALSE(r.certificate.empty());
        const auto g = build_carrier_graph(region_of(ring), Mode::vertex);
        for (const auto& p : r.certificate) {
            double len = 0;
            for (auto c : p.carriers) len += r.weights.weights[c];
            EXPECT_NEAR(len, 1.0, 1e-6);
            std::vector<bool> in(g.n, false);
            for (auto c : p.carriers) in[c] = true;
            if (which == Which::sup) EXPECT_TRUE(contains_connecting_path(g, in));
            else EXPECT_TRUE(contains_essential_loop(g, in));
        }
    }
}

TEST(Modulus, NoPathAndTooLarge) {
    const auto big = shapes::barycentric_square_annulus(4);
    EXPECT_EQ(kind_of([&] { (void)brute_force_modulus(big, Mode::vertex); }), ErrorKind::TooLarge);
    const auto q = single_tile_quad();
    EXPECT_EQ(kind_of([&] { (void)brute_force_modulus(q, Mode::skinny, Which::inf); }), ErrorKind::NotARing);
}

TEST(Modulus, AdjacencyContainment) {
    // vertex-adjacent distances never exceed edge-adjacent ones
    const auto c = subdivide_n(shapes::two_triangle_square(), builtin_barycentric(), 2);
    const auto q = make_quad(c, {0, 1, 2, 3});
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    for (int t = 0; t < 5; ++t) {
        WeightFunction w{Carrier::tiles, {}};
        for (std::size_t i = 0; i < c.num_faces(); ++i) w.weights.push_back(d(rng));
        EXPECT_LE(height(q, w, Mode::fat), height(q, w, Mode::skinny) + 1e-12);
    }
}

TEST(Modulus, ReflectionSymmetricSquares) {
    for (const auto& r : {builtin_barycentric(), builtin_hexagonal()})
        for (int level = 1; level <= 2; ++level) {
            const auto q = make_quad(subdivide_n(shapes::two_triangle_square(), r, level), {0, 1, 2, 3});
            EXPECT_NEAR(modulus_sup(q, Mode::vertex).value, 1.0, 1e-6) << r.name << level;
        }
}

TEST(Modulus, FatEqualsSkinnyAfterBlowUp) {
    const auto c = blow_up_vertices(shapes::square_grid(2, 2, true, [](int i, int j) { return (i + j) % 2 == 0; }));
    // boundary of the blown-up grid: pick four corner vertices along the walk
    const auto cyc = c.boundary_cycles().at(0);
    const auto n = cyc.size();
    const std::array<VertexId, 4> corners{c.tail(cyc[0]), c.tail(cyc[n / 4]), c.tail(cyc[n / 2]),
                                          c.tail(cyc[3 * n / 4])};
    const auto q = make_quad(c, corners);
    const auto [fat, skinny] = fat_skinny_gap(q);
    EXPECT_NEAR(fat, skinny, 1e-6);
}

TEST(Modulus, RandomInstancesMatchOracle) {
    std::mt19937 rng(11);
    int checked = 0;
    for (int t = 0; t < 30; ++t) {
        const int k = 3 + static_cast<int>(rng() % 3);
        auto diag = [&](int, int) { return rng() % 2 == 0; };
        const auto a = shapes::annulus_grid(k, 1, true, diag);
        const auto ring = shapes::annulus_grid_ring(a, k);
        for (auto which : {Which::sup, Which::inf}) {
            const auto fast = which == Which::sup ? modulus_sup(ring, Mode::vertex) : modulus_inf(ring, Mode::vertex);
            const auto slow = brute_force_modulus(ring, Mode::vertex, which);
            EXPECT_NEAR(fast.value, slow.value, 1e-6);
            ++checked;
        }
    }
    EXPECT_EQ(checked, 60);
}
