#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <random>
#include <string>
#include <vector>

#include "subdiv/conformal.hpp"
#include "subdiv/io.hpp"
#include "subdiv/modulus.hpp"
#include "subdiv/packing.hpp"
#include "subdiv/rules.hpp"
#include "subdiv/shapes.hpp"

namespace subdiv {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    nlohmann::json detail;
    double seconds = 0; // not serialized, so reports stay byte-stable
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    int threads = 1;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Random triangulated annulus of k columns and h rows.
inline RingMarking random_ring(std::mt19937_64& rng, int k, int h) {
    const auto a = shapes::annulus_grid(k, h, true, [&](int, int) { return rng() % 2 == 0; });
    return shapes::annulus_grid_ring(a, k);
}

} // namespace detail

// 1. Two-triangle square in vertex mode keeps modulus 1 under barycentric subdivision.
inline CheckResult check_square_modulus(const VerifyOptions&) {
    CheckResult res{1, "square modulus 1 at barycentric stages 0-3", true, {}, 0};
    const auto r = builtin_barycentric();
    for (int s = 0; s <= 3; ++s) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto q = make_quad(subdivide_n(shapes::two_triangle_square(), r, s), {0, 1, 2, 3});
        const double m = modulus_sup(q, Mode::vertex).value;
        const double secs = detail::seconds_since(t0);
        const bool ok = detail::near(m, 1.0, 1e-6) && secs < 10;
        res.detail["stages"].push_back({{"stage", s}, {"modulus", m}, {"under_10s", secs < 10}});
        res.passed = res.passed && ok;
    }
    return res;
}

// 2. Both moduli of the 2n-square annulus around a valence-n vertex are 1/n.
inline CheckResult check_annulus_inverse_n(const VerifyOptions&) {
    CheckResult res{2, "annulus of 2n squares has moduli 1/n", true, {}, 0};
    for (int n : {4, 6, 8}) {
        const auto ring = shapes::barycentric_square_annulus(n);
        const double sup = modulus_sup(ring, Mode::vertex).value;
        const double inf = modulus_inf(ring, Mode::vertex).value;
        const bool ok = detail::near(sup, 1.0 / n, 1e-6) && detail::near(inf, 1.0 / n, 1e-6);
        res.detail["cases"].push_back({{"n", n}, {"M_sup", sup}, {"m_inf", inf}});
        res.passed = res.passed && ok;
    }
    return res;
}

// 3. Annuli around a barycentric vertex halve at each stage; their sum stays below 2/n.
inline CheckResult check_geometric_decay(const VerifyOptions&) {
    CheckResult res{3, "barycentric annuli decay as 1/(2^k n)", true, {}, 0};
    const int n = 6;
    const auto rep = axiom_probe_vertex(2, builtin_barycentric(), shapes::vertex_star(n), 0, 3);
    for (std::size_t k = 0; k < rep.moduli.size(); ++k) {
        const double want = 1.0 / (std::pow(2.0, static_cast<double>(k)) * n);
        res.passed = res.passed && detail::near(rep.moduli[k], want, 1e-5);
    }
    res.passed = res.passed && rep.moduli.size() == 3 && rep.layered.back() <= 2.0 / n + 1e-5;
    res.detail = {{"moduli", rep.moduli}, {"layer_bound", rep.layered.back()}, {"limit", 2.0 / n}};
    return res;
}

// 4. The 18-triangle hexagonal annulus has modulus >= 1/12, the same at every stage.
inline CheckResult check_hexagonal_lower_bound(const VerifyOptions&) {
    CheckResult res{4, "hexagonal annulus modulus >= 1/12 at stages 1-3", true, {}, 0};
    const auto tower = make_tower(shapes::vertex_star(6), builtin_hexagonal(), 3);
    std::vector<double> mods;
    for (int s = 1; s <= 3; ++s) {
        const auto ring = vertex_ring(tower.stages[static_cast<std::size_t>(s)], 0);
        const double m = modulus_sup(ring, Mode::vertex).value;
        mods.push_back(m);
        res.passed = res.passed && ring.complex.num_faces() == 18 && m >= 1.0 / 12 - 1e-6;
        res.detail["faces"].push_back(ring.complex.num_faces());
    }
    for (double m : mods) res.passed = res.passed && detail::near(m, mods.front(), 1e-6);
    res.detail["moduli"] = mods;
    return res;
}

// 5. m_inf = M_sup on random small triangulated rings in vertex mode.
inline CheckResult check_duality(const VerifyOptions& opt) {
    CheckResult res{5, "m_inf = M_sup on 25 random rings", true, {}, 0};
    std::mt19937_64 rng(opt.seed + 5);
    double worst = 0;
    for (int i = 0; i < 25; ++i) {
        const int k = 3 + static_cast<int>(rng() % 4);
        const int h = 1 + static_cast<int>(rng() % 2);
        const auto ring = detail::random_ring(rng, k, h);
        const double sup = modulus_sup(ring, Mode::vertex).value;
        const double inf = modulus_inf(ring, Mode::vertex).value;
        worst = std::max(worst, std::abs(sup - inf));
    }
    res.passed = worst <= 1e-6;
    res.detail = {{"instances", 25}, {"max_gap", worst}};
    return res;
}

// 6. Cutting plane agrees with the brute-force oracle on small markings.
inline CheckResult check_oracle(const VerifyOptions& opt) {
    CheckResult res{6, "cutting plane matches brute force on 120 instances", true, {}, 0};
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(opt.seed + 6);
    double worst = 0;
    int count = 0;
    const Mode modes[] = {Mode::vertex, Mode::fat, Mode::skinny};
    for (int i = 0; i < 120; ++i) {
        const Mode mode = modes[i % 3];
        double fast = 0, slow = 0;
        if (i % 2 == 0) {
            const int k = 3 + static_cast<int>(rng() % 3);
            const auto ring = detail::random_ring(rng, k, 1);
            const Which which = (i / 2) % 2 == 0 ? Which::sup : Which::inf;
            fast = (which == Which::sup ? modulus_sup(ring, mode) : modulus_inf(ring, mode)).value;
            slow = brute_force_modulus(ring, mode, which).value;
        } else {
            const int w = 2 + static_cast<int>(rng() % 2), h = 2;
            const auto g = shapes::square_grid(w, h, true, [&](int, int) { return rng() % 2 == 0; });
            const auto q = shapes::grid_quad(g, w, h);
            fast = modulus_sup(q, mode).value;
            slow = brute_force_modulus(q, mode).value;
        }
        worst = std::max(worst, std::abs(fast - slow));
        ++count;
    }
    const double secs = detail::seconds_since(t0);
    res.passed = count >= 100 && worst <= 1e-6 && secs < 60;
    res.detail = {{"instances", count}, {"max_difference", worst}, {"under_60s", secs < 60}};
    return res;
}

// 7. Layer Theorem: the union of nested disjoint rings has at least the summed modulus.
inline CheckResult check_layer_theorem(const VerifyOptions&) {
    CheckResult res{7, "modulus(union) >= sum of layer moduli on 10 instances", true, {}, 0};
    for (const auto& r : {builtin_hexagonal(), builtin_barycentric()})
        for (int n : {4, 5, 6, 7, 8}) {
            const int stage = r.name == "hexagonal" ? 3 : 2;
            const auto tower = make_tower(shapes::vertex_star(n), r, stage);
            const auto& c = tower.stages[static_cast<std::size_t>(stage)];
            const auto inner = extract_vertex_annulus(c, 0, 1, 2);
            const auto outer = extract_vertex_annulus(c, 0, 3, 4);
            const auto whole = extract_vertex_annulus(c, 0, 1, 4);
            const double m1 = modulus_sup(inner, Mode::vertex).value;
            const double m2 = modulus_sup(outer, Mode::vertex).value;
            const auto est = layer_bound(tower, {{inner, stage, m1}, {outer, stage, m2}}, VertexId{0}, true);
            const double mu = modulus_sup(whole, Mode::vertex).value;
            res.passed = res.passed && mu >= est.bound - 1e-6;
            res.detail["instances"].push_back(
                {{"rule", r.name}, {"valence", n}, {"layers", est.moduli}, {"sum", est.bound}, {"union", mu}});
        }
    return res;
}

// 8. Hexagonal test quads have a positive lower bound, and M/(A k) bounds star annuli from below.
inline CheckResult check_criterion(const VerifyOptions&) {
    CheckResult res{8, "1,2,3-tile criterion on hexagonal levels 1-2", true, {}, 0};
    const auto rep = criterion_123(builtin_hexagonal(), 2, Mode::vertex);
    res.passed = rep.M > 0;
    res.detail["M"] = rep.M;
    res.detail["A_max"] = rep.A_max;
    const auto c = subdivide_n(shapes::vertex_star(6), builtin_hexagonal(), 3);
    int used = 0;
    for (VertexId v = 0; v < c.num_vertices() && used < 5; ++v) {
        if (c.is_boundary_vertex(v)) continue;
        RingMarking ring;
        try {
            ring = vertex_ring(c, v);
        } catch (const Error&) {
            continue; // second star reaches the boundary
        }
        const auto k = star_curve_tiles(c, v);
        const double bound = star_alpha_bound(rep.M, rep.A_max, k);
        const double m = modulus_sup(ring, Mode::vertex).value;
        res.passed = res.passed && bound <= m;
        res.detail["instances"].push_back({{"vertex", v}, {"k", k}, {"bound", bound}, {"modulus", m}});
        ++used;
    }
    res.passed = res.passed && used == 5;
    return res;
}

// 9. Packings converge, close up, and render deterministically.
inline CheckResult check_packing(const VerifyOptions&) {
    CheckResult res{9, "packing residual, tangency and SVG determinism", true, {}, 0};
    const std::pair<const char*, int> cases[] = {{"barycentric", 3}, {"hexagonal", 4}};
    for (const auto& [name, stage] : cases) {
        const auto c = subdivide_n(shapes::triangle(), builtin_rule(name), stage);
        const auto p = pack(c, 1e-10);
        const double resid = max_angle_residual(p), tang = tangency_discrepancy(p);
        const bool same = svg(p, ColorBy::type) == svg(pack(c, 1e-10), ColorBy::type);
        res.passed = res.passed && resid < 1e-8 && tang < 1e-6 && same;
        res.detail["cases"].push_back({{"rule", name},
                                       {"stage", stage},
                                       {"angle_residual", resid},
                                       {"tangency", tang},
                                       {"svg_identical", same}});
    }
    return res;
}

// 10. Axiom-2 probes: barycentric layered bounds stay below 2/n, hexagonal ones grow by >= 1/12 per stage.
inline CheckResult check_axiom2_probes(const VerifyOptions&) {
    CheckResult res{10, "Axiom 2 probes on barycentric and hexagonal through stage 4", true, {}, 0};
    const int n = 6;
    const auto bary = axiom_probe_vertex(2, builtin_barycentric(), shapes::vertex_star(n), 0, 4);
    for (double b : bary.layered) res.passed = res.passed && b <= 2.0 / n + 1e-5;
    const auto hex = axiom_probe_vertex(2, builtin_hexagonal(), shapes::vertex_star(n), 0, 4);
    double prev = 0;
    for (double b : hex.layered) {
        res.passed = res.passed && b - prev >= 1.0 / 12 - 1e-6;
        prev = b;
    }
    res.detail = {{"barycentric_layered", bary.layered}, {"hexagonal_layered", hex.layered}, {"limit", 2.0 / n}};
    return res;
}

using Check = std::function<CheckResult(const VerifyOptions&)>;

inline CheckResult run_check(const Check& check, int id, const VerifyOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = check(opt);
    } catch (const Error& e) {
        r = {id, "criterion " + std::to_string(id), false, {{"error", to_string(e.kind())}, {"message", e.what()}}, 0};
    }
    r.seconds = detail::seconds_since(t0);
    return r;
}

[[nodiscard]] inline std::vector<std::pair<int, Check>> all_checks() {
    return {{1, check_square_modulus},   {2, check_annulus_inverse_n}, {3, check_geometric_decay},
            {4, check_hexagonal_lower_bound}, {5, check_duality},       {6, check_oracle},
            {7, check_layer_theorem},    {8, check_criterion},          {9, check_packing},
            {10, check_axiom2_probes}};
}

[[nodiscard]] inline std::vector<int> suite_ids(const std::string& suite) {
    if (suite == "paper") return {1, 2, 3, 4, 5, 7, 8, 10};
    if (suite == "oracle") return {6};
    if (suite == "packing") return {9};
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    fail(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
}

// Runs the selected checks, `opt.threads` at a time; results keep id order.
[[nodiscard]] inline std::vector<CheckResult> run_checks(const std::vector<int>& ids, const VerifyOptions& opt = {}) {
    const auto checks = all_checks();
    std::vector<CheckResult> out(ids.size());
    const std::size_t width = static_cast<std::size_t>(std::max(1, opt.threads));
    for (std::size_t start = 0; start < ids.size(); start += width) {
        std::vector<std::future<CheckResult>> batch;
        for (std::size_t i = start; i < std::min(ids.size(), start + width); ++i) {
            const int id = ids[i];
            const auto it = std::find_if(checks.begin(), checks.end(), [&](const auto& c) { return c.first == id; });
            if (it == checks.end()) fail(ErrorKind::InvalidArgument, "no criterion " + std::to_string(id));
            const auto launch = width == 1 ? std::launch::deferred : std::launch::async;
            batch.push_back(std::async(launch, [&opt, id, fn = it->second] { return run_check(fn, id, opt); }));
        }
        for (std::size_t i = 0; i < batch.size(); ++i) out[start + i] = batch[i].get();
    }
    return out;
}

[[nodiscard]] inline std::vector<CheckResult> verify_suite(const std::string& suite, const VerifyOptions& opt = {}) {
    return run_checks(suite_ids(suite), opt);
}

[[nodiscard]] inline nlohmann::json report_to_json(const std::vector<CheckResult>& rs) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rs) j.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    return j;
}

[[nodiscard]] inline std::string summary_line(const CheckResult& r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", r.seconds);
    return std::string(r.passed ? "PASS" : "FAIL") + "  criterion " + std::to_string(r.id) + ": " + r.name + " (" +
           buf + ")";
}

} // namespace subdiv
