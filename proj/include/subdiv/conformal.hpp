#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "subdiv/complex.hpp"
#include "subdiv/marking.hpp"
#include "subdiv/modulus.hpp"
#include "subdiv/rules.hpp"

namespace subdiv {

// ---------------------------------------------------------------------------
// Test quadrilaterals
// ---------------------------------------------------------------------------

enum class QuadKind { I = 1, II = 2, III = 3 };

[[nodiscard]] constexpr std::string_view to_string(QuadKind k) noexcept {
    switch (k) {
    case QuadKind::I: return "I";
    case QuadKind::II: return "II";
    case QuadKind::III: return "III";
    }
    return "?";
}

struct TestQuadrilateral {
    QuadKind kind = QuadKind::I;
    std::vector<FaceId> tiles;          // in the host complex, t1 t2 t3 order
    std::vector<EdgeId> interior_edges; // host edge ids
    EdgeId top = kNone;                 // host edge ids of the two ends
    EdgeId bottom = kNone;
    QuadMarking marking;                // on the sub-complex of `tiles`
};

namespace detail {

inline bool edges_disjoint(const Complex2D& c, EdgeId e, EdgeId f) {
    const auto& a = c.edge(e);
    const auto& b = c.edge(f);
    return a.a != b.a && a.a != b.b && a.b != b.a && a.b != b.b;
}

inline bool edge_has(const Complex2D& c, EdgeId e, VertexId v) { return c.edge(e).a == v || c.edge(e).b == v; }

inline std::vector<VertexId> shared_vertices(const Complex2D& c, FaceId f, FaceId g) {
    auto a = c.face_vertices(f), b = c.face_vertices(g);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<VertexId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::vector<EdgeId> shared_edges(const Complex2D& c, FaceId f, FaceId g) {
    std::vector<EdgeId> out;
    for (const auto& s : c.face(f).boundary)
        for (const auto& t : c.face(g).boundary)
            if (s.edge == t.edge) out.push_back(s.edge);
    return out;
}

inline std::optional<TestQuadrilateral> make_test_quad(const Complex2D& c, QuadKind kind, std::vector<FaceId> tiles,
                                                       std::vector<EdgeId> interior, EdgeId top, EdgeId bottom) {
    auto sub = subcomplex(c, tiles);
    auto local = [&](EdgeId e) {
        const auto it = std::find(sub.parent.edges.begin(), sub.parent.edges.end(), e);
        return static_cast<EdgeId>(it - sub.parent.edges.begin());
    };
    try {
        auto q = quad_from_ends(sub.complex, {local(top)}, {local(bottom)}, sub.parent);
        return TestQuadrilateral{kind, std::move(tiles), std::move(interior), top, bottom, std::move(q)};
    } catch (const Error&) {
        return std::nullopt; // the tiles do not form a disk with these ends
    }
}

} // namespace detail

// All Type I, II and III test quadrilaterals of c, deduplicated by their tile
// set and unordered pair of ends. Ends are single edges that share no vertex.
[[nodiscard]] inline std::vector<TestQuadrilateral> enumerate_test_quads(const Complex2D& c) {
    std::vector<TestQuadrilateral> out;
    std::set<std::tuple<std::vector<FaceId>, EdgeId, EdgeId>> seen;
    auto push = [&](QuadKind kind, std::vector<FaceId> tiles, std::vector<EdgeId> interior, EdgeId top, EdgeId bottom) {
        auto key_tiles = tiles;
        std::sort(key_tiles.begin(), key_tiles.end());
        if (!seen.insert({key_tiles, std::min(top, bottom), std::max(top, bottom)}).second) return;
        if (auto q = detail::make_test_quad(c, kind, std::move(tiles), std::move(interior), top, bottom))
            out.push_back(std::move(*q));
    };
    // boundary edges of the union of `tiles`
    auto union_boundary = [&](const std::vector<FaceId>& tiles) {
        std::map<EdgeId, int> count;
        for (auto f : tiles)
            for (const auto& s : c.face(f).boundary) ++count[s.edge];
        std::vector<EdgeId> out_edges;
        for (const auto& [e, n] : count)
            if (n == 1) out_edges.push_back(e);
        return out_edges;
    };

    for (FaceId f = 0; f < c.num_faces(); ++f) {
        const auto& b = c.face(f).boundary;
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j)
                if (detail::edges_disjoint(c, b[i].edge, b[j].edge)) push(QuadKind::I, {f}, {}, b[i].edge, b[j].edge);
    }
    for (EdgeId e = 0; e < c.num_edges(); ++e) {
        const auto& fs = c.edge_faces(e);
        if (fs.size() != 2 || detail::shared_edges(c, fs[0], fs[1]).size() != 1 ||
            detail::shared_vertices(c, fs[0], fs[1]).size() != 2)
            continue;
        const auto bd = union_boundary({fs[0], fs[1]});
        const auto p = c.edge(e).a, q = c.edge(e).b;
        std::vector<EdgeId> meeting;
        for (auto x : bd)
            if (detail::edge_has(c, x, p) || detail::edge_has(c, x, q)) meeting.push_back(x);
        for (std::size_t i = 0; i < meeting.size(); ++i)
            for (std::size_t j = i + 1; j < meeting.size(); ++j)
                if (detail::edges_disjoint(c, meeting[i], meeting[j]))
                    push(QuadKind::II, {fs[0], fs[1]}, {e}, meeting[i], meeting[j]);
    }
    for (FaceId t2 = 0; t2 < c.num_faces(); ++t2) {
        const auto& b = c.face(t2).boundary;
        if (b.size() != 3) continue;
        for (std::size_t k = 0; k < 3; ++k) {
            // f2 = b[k] is the bottom; f1, f3 are the other two edges
            const auto f2 = b[k].edge, f1 = b[(k + 1) % 3].edge, f3 = b[(k + 2) % 3].edge;
            const auto& n1 = c.edge_faces(f1);
            const auto& n3 = c.edge_faces(f3);
            if (n1.size() != 2 || n3.size() != 2) continue;
            const auto t1 = n1[0] == t2 ? n1[1] : n1[0];
            const auto t3 = n3[0] == t2 ? n3[1] : n3[0];
            if (t1 == t3) continue;
            if (detail::shared_edges(c, t1, t2).size() != 1 || detail::shared_edges(c, t2, t3).size() != 1) continue;
            if (!detail::shared_edges(c, t1, t3).empty()) continue;
            const auto common = detail::shared_vertices(c, t1, t3);
            if (common.size() != 1) continue;
            const auto v = common[0];
            if (!detail::edge_has(c, f1, v) || !detail::edge_has(c, f3, v)) continue;
            for (auto top : union_boundary({t1, t2, t3}))
                if (detail::edge_has(c, top, v) && detail::edges_disjoint(c, top, f2))
                    push(QuadKind::III, {t1, t2, t3}, {f1, f3}, top, f2);
        }
    }
    return out;
}

// Independent structural re-check of a test quadrilateral against its kind.
[[nodiscard]] inline bool valid_test_quad(const Complex2D& c, const TestQuadrilateral& q) {
    const auto& t = q.tiles;
    auto in_face = [&](FaceId f, EdgeId e) {
        for (const auto& s : c.face(f).boundary)
            if (s.edge == e) return true;
        return false;
    };
    if (!detail::edges_disjoint(c, q.top, q.bottom)) return false;
    switch (q.kind) {
    case QuadKind::I:
        return t.size() == 1 && in_face(t[0], q.top) && in_face(t[0], q.bottom) && q.interior_edges.empty();
    case QuadKind::II: {
        if (t.size() != 2 || q.interior_edges.size() != 1) return false;
        const auto f = q.interior_edges[0];
        if (detail::shared_edges(c, t[0], t[1]) != std::vector<EdgeId>{f}) return false;
        auto meets = [&](EdgeId e) { return detail::edge_has(c, e, c.edge(f).a) || detail::edge_has(c, e, c.edge(f).b); };
        return meets(q.top) && meets(q.bottom) && q.top != f && q.bottom != f;
    }
    case QuadKind::III: {
        if (t.size() != 3 || q.interior_edges.size() != 2) return false;
        if (c.face(t[1]).boundary.size() != 3) return false;
        const auto common = detail::shared_vertices(c, t[0], t[2]);
        if (common.size() != 1 || !detail::shared_edges(c, t[0], t[2]).empty()) return false;
        return detail::edge_has(c, q.top, common[0]) && in_face(t[1], q.bottom) && !in_face(t[0], q.bottom) &&
               !in_face(t[2], q.bottom);
    }
    }
    return false;
}

// ---------------------------------------------------------------------------
// 1,2,3-tile criterion
// ---------------------------------------------------------------------------

struct CriterionReport {
    double M = 0;                         // minimum modulus over all quads and levels
    double A_max = 0;                     // at the deepest level
    std::size_t quad_count = 0;
    std::map<std::string, double> per_kind_min; // "I", "II", "III" at the deepest level
    std::vector<double> per_level_min;    // index = level - 1
    bool monotone = true;                 // per-level minima never increase with depth
    int levels = 0;
    Mode mode = Mode::vertex;
    std::vector<double> quad_values;      // deepest level, enumeration order
};

// Test quadrilaterals are taken in every tile type's pattern (one subdivided
// tile), then subdivided `levels` more times.
[[nodiscard]] inline CriterionReport criterion_123(const SubdivisionRule& r, int levels, Mode mode,
                                                   const SolverOptions& opt = {}) {
    if (levels < 1) fail(ErrorKind::InvalidArgument, "criterion needs levels >= 1");
    CriterionReport rep;
    rep.levels = levels;
    rep.mode = mode;
    rep.M = std::numeric_limits<double>::infinity();
    rep.per_level_min.assign(static_cast<std::size_t>(levels), std::numeric_limits<double>::infinity());
    for (const auto& [name, tile] : r.tiles) {
        const auto& base = tile.pattern;
        const auto quads = enumerate_test_quads(base);
        if (quads.empty()) continue;
        std::vector<SubdivisionTrace> traces;
        for (int l = 1; l <= levels; ++l) traces.push_back(subdivide_n_traced(base, r, l));
        const auto& deep = traces.back();
        const auto n_carriers = mode == Mode::vertex ? deep.complex.num_vertices() : deep.complex.num_faces();
        std::vector<double> summed(n_carriers, 0.0);
        for (const auto& q : quads) {
            ++rep.quad_count;
            for (int l = 1; l <= levels; ++l) {
                const auto& tr = traces[static_cast<std::size_t>(l - 1)];
                std::vector<FaceId> faces;
                for (FaceId f = 0; f < tr.complex.num_faces(); ++f)
                    if (std::find(q.tiles.begin(), q.tiles.end(), tr.face_root[f]) != q.tiles.end()) faces.push_back(f);
                auto sub = subcomplex(tr.complex, faces);
                std::vector<EdgeId> local(tr.complex.num_edges(), kNone);
                for (EdgeId e = 0; e < sub.parent.edges.size(); ++e) local[sub.parent.edges[e]] = e;
                auto lift = [&](EdgeId e) {
                    std::vector<EdgeId> out;
                    for (auto d : tr.edge_descendants[e]) out.push_back(local[d]);
                    return out;
                };
                const auto parent = sub.parent;
                const auto qm = quad_from_ends(std::move(sub.complex), lift(q.top), lift(q.bottom), parent);
                const auto res = modulus_sup(qm, mode, opt);
                auto& lm = rep.per_level_min[static_cast<std::size_t>(l - 1)];
                lm = std::min(lm, res.value);
                rep.M = std::min(rep.M, res.value);
                if (l == levels) {
                    rep.quad_values.push_back(res.value);
                    const std::string k(to_string(q.kind));
                    auto it = rep.per_kind_min.find(k);
                    if (it == rep.per_kind_min.end()) rep.per_kind_min[k] = res.value;
                    else it->second = std::min(it->second, res.value);
                    // unit-area normalization of the optimal weighting, summed per carrier
                    const double scale = 1.0 / std::sqrt(res.area);
                    const auto& pv = mode == Mode::vertex ? parent.vertices : parent.faces;
                    for (std::size_t i = 0; i < res.weights.weights.size(); ++i)
                        summed[pv[i]] += res.weights.weights[i] * scale;
                }
            }
        }
        // area of each base tile under the summed weighting
        for (FaceId t = 0; t < base.num_faces(); ++t) {
            std::set<std::uint32_t> carriers;
            for (FaceId f = 0; f < deep.complex.num_faces(); ++f) {
                if (deep.face_root[f] != t) continue;
                if (mode == Mode::vertex)
                    for (auto v : deep.complex.face_vertices(f)) carriers.insert(v);
                else
                    carriers.insert(f);
            }
            double a = 0;
            for (auto cid : carriers) a += summed[cid] * summed[cid];
            rep.A_max = std::max(rep.A_max, a);
        }
    }
    if (rep.quad_count == 0) fail(ErrorKind::InvalidArgument, "rule '" + r.name + "' has no test quadrilaterals");
    for (std::size_t i = 1; i < rep.per_level_min.size(); ++i)
        if (rep.per_level_min[i] > rep.per_level_min[i - 1] + opt.tol) rep.monotone = false;
    return rep;
}

[[nodiscard]] inline double star_alpha_bound(double M, double A_max, long long k) {
    if (!(M > 0) || !(A_max > 0) || k < 1) fail(ErrorKind::NonPositive, "star bound needs M, A_max > 0 and k >= 1");
    return M / (A_max * static_cast<double>(k));
}

[[nodiscard]] inline double vertex_modulus_bound(const ValenceReport& report, double C) {
    if (!(C > 0)) fail(ErrorKind::NonPositive, "C must be positive");
    if (report.valence == 0) fail(ErrorKind::NonPositive, "vertex has no faces");
    return C / static_cast<double>(report.valence);
}

// Number of tiles meeting a curve pushed just outside the star of v.
[[nodiscard]] inline long long star_curve_tiles(const Complex2D& c, VertexId v) {
    return static_cast<long long>(star_faces(c, v, 2).size());
}

// ---------------------------------------------------------------------------
// Subdivision towers and the Layer Theorem
// ---------------------------------------------------------------------------

// Stages 0..n of repeated subdivision with the face parent of every step.
struct Tower {
    std::vector<Complex2D> stages;
    std::vector<std::vector<FaceId>> parent; // parent[s][f]: face of stage s+1 -> face of stage s
};

[[nodiscard]] inline Tower make_tower(const Complex2D& c, const SubdivisionRule& r, int n) {
    Tower t;
    t.stages.push_back(c);
    for (int i = 0; i < n; ++i) {
        auto step = subdivide_traced(t.stages.back(), r);
        t.parent.push_back(std::move(step.face_parent));
        t.stages.push_back(std::move(step.complex));
    }
    return t;
}

// Faces of stage `to` descending from the given faces of stage `from`.
[[nodiscard]] inline std::vector<FaceId> lift_faces(const Tower& t, std::vector<FaceId> faces, int from, int to) {
    for (int s = from; s < to; ++s) {
        std::vector<bool> in(t.stages[static_cast<std::size_t>(s)].num_faces(), false);
        for (auto f : faces) in[f] = true;
        faces.clear();
        const auto& par = t.parent[static_cast<std::size_t>(s)];
        for (FaceId f = 0; f < par.size(); ++f)
            if (in[par[f]]) faces.push_back(f);
    }
    std::sort(faces.begin(), faces.end());
    return faces;
}

// A ring cut from stage `stage` of a tower (its parent map points there).
struct Layer {
    RingMarking ring;
    int stage = 0;
    double modulus = 0;
};

struct LayerEstimate {
    std::vector<double> moduli; // innermost first
    std::vector<int> stages;    // matching `moduli`
    double bound = 0;
    std::optional<VertexId> vertex;
};

[[nodiscard]] inline LayerEstimate layer_bound(const std::vector<double>& moduli) {
    LayerEstimate e;
    e.moduli = moduli;
    for (double m : moduli) {
        if (m < 0) fail(ErrorKind::NonPositive, "moduli must be nonnegative");
        e.bound += m;
    }
    e.stages.assign(moduli.size(), 0);
    return e;
}

// Checks that the layers are pairwise disjoint (faces, and vertices too when
// `vertex_disjoint`) and nested around a common core, then sums the moduli.
// Layers may come from different stages; all are compared at the deepest one.
[[nodiscard]] inline LayerEstimate layer_bound(const Tower& tower, std::vector<Layer> layers,
                                               std::optional<VertexId> core = std::nullopt,
                                               bool vertex_disjoint = false) {
    if (layers.empty()) fail(ErrorKind::InvalidArgument, "no layers");
    int deepest = 0;
    for (const auto& l : layers) {
        if (l.ring.parent.faces.empty()) fail(ErrorKind::InvalidArgument, "layer lacks a parent map");
        if (l.stage < 0 || l.stage >= static_cast<int>(tower.stages.size()))
            fail(ErrorKind::InvalidArgument, "layer stage out of range");
        deepest = std::max(deepest, l.stage);
    }
    const auto& host = tower.stages[static_cast<std::size_t>(deepest)];
    struct Info {
        std::vector<bool> face;
        std::vector<bool> inside;
        std::size_t inside_count = 0;
    };
    std::vector<Info> info;
    for (const auto& l : layers) {
        Info in;
        in.face.assign(host.num_faces(), false);
        for (auto f : lift_faces(tower, l.ring.parent.faces, l.stage, deepest)) in.face[f] = true;
        // inner-cycle vertices keep their ids in deeper stages
        std::set<VertexId> inner_v, outer_v;
        for (auto v : edge_set_vertices(l.ring.complex, l.ring.inner)) inner_v.insert(l.ring.parent.vertices[v]);
        for (auto v : edge_set_vertices(l.ring.complex, l.ring.outer)) outer_v.insert(l.ring.parent.vertices[v]);
        in.inside.assign(host.num_faces(), false);
        std::vector<FaceId> stack;
        for (auto v : inner_v) {
            if (outer_v.count(v)) continue;
            for (auto f : host.vertex_faces(v))
                if (!in.face[f] && !in.inside[f]) {
                    in.inside[f] = true;
                    stack.push_back(f);
                }
        }
        while (!stack.empty()) {
            const auto f = stack.back();
            stack.pop_back();
            for (const auto& s : host.face(f).boundary)
                for (auto g : host.edge_faces(s.edge))
                    if (!in.face[g] && !in.inside[g]) {
                        in.inside[g] = true;
                        stack.push_back(g);
                    }
        }
        for (bool b : in.inside) in.inside_count += b ? 1 : 0;
        info.push_back(std::move(in));
    }
    const auto n = layers.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            for (FaceId f = 0; f < host.num_faces(); ++f)
                if (info[i].face[f] && info[j].face[f])
                    fail(ErrorKind::Overlapping, "layers " + std::to_string(i) + " and " + std::to_string(j) + " share a face");
            if (vertex_disjoint) {
                std::vector<bool> vi(host.num_vertices(), false);
                for (FaceId f = 0; f < host.num_faces(); ++f)
                    if (info[i].face[f])
                        for (auto v : host.face_vertices(f)) vi[v] = true;
                for (FaceId f = 0; f < host.num_faces(); ++f)
                    if (info[j].face[f])
                        for (auto v : host.face_vertices(f))
                            if (vi[v])
                                fail(ErrorKind::Overlapping, "layers " + std::to_string(i) + " and " + std::to_string(j) +
                                                                 " share vertex " + std::to_string(v));
            }
        }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return info[a].inside_count < info[b].inside_count; });
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const auto& a = info[order[k]];
        const auto& b = info[order[k + 1]];
        for (FaceId f = 0; f < host.num_faces(); ++f)
            if ((a.face[f] || a.inside[f]) && !b.inside[f])
                fail(ErrorKind::NotNested, "layer " + std::to_string(order[k]) + " is not inside layer " +
                                               std::to_string(order[k + 1]));
    }
    if (core) {
        const auto& a = info[order[0]];
        for (auto f : host.vertex_faces(*core))
            if (!a.inside[f]) fail(ErrorKind::NotNested, "innermost layer does not surround the core vertex");
    }
    LayerEstimate e;
    e.vertex = core;
    for (auto k : order) {
        if (layers[k].modulus < 0) fail(ErrorKind::NonPositive, "moduli must be nonnegative");
        e.moduli.push_back(layers[k].modulus);
        e.stages.push_back(layers[k].stage);
        e.bound += layers[k].modulus;
    }
    return e;
}

// ---------------------------------------------------------------------------
// Axiom probes
// ---------------------------------------------------------------------------

struct AxiomReport {
    int axiom = 1;
    std::vector<int> stages;       // stage index of each modulus
    std::vector<double> moduli;    // per stage
    // Axiom 0
    double infimum = 0;
    // Axiom 1
    double r = 0;
    double K = 0;
    // Axiom 2
    std::vector<double> layered;   // cumulative layer bounds
    double threshold = 0;
    std::optional<int> stage_reaching_threshold;
    bool empirical = true;
};

// Verdict fields as a pure function of the per-stage moduli.
[[nodiscard]] inline AxiomReport axiom_verdicts(int axiom, std::vector<int> stages, std::vector<double> moduli,
                                                double threshold) {
    AxiomReport rep;
    rep.axiom = axiom;
    rep.stages = std::move(stages);
    rep.moduli = std::move(moduli);
    rep.threshold = threshold;
    if (rep.moduli.empty()) return rep;
    rep.infimum = *std::min_element(rep.moduli.begin(), rep.moduli.end());
    rep.r = rep.infimum;
    const double hi = *std::max_element(rep.moduli.begin(), rep.moduli.end());
    rep.K = rep.r > 0 ? hi / rep.r : std::numeric_limits<double>::infinity();
    double sum = 0;
    for (std::size_t i = 0; i < rep.moduli.size(); ++i) {
        sum += rep.moduli[i];
        rep.layered.push_back(sum);
        if (!rep.stage_reaching_threshold && sum > threshold) rep.stage_reaching_threshold = rep.stages[i];
    }
    return rep;
}

// Ring around v at the given stage: depth-1 star to depth-2 star.
[[nodiscard]] inline RingMarking vertex_ring(const Complex2D& c, VertexId v) { return extract_vertex_annulus(c, v, 1, 2); }

// Probe around an interior vertex: at each stage 1..stages the ring between
// the first and second stars of v; moduli in `mode` (M_sup).
[[nodiscard]] inline AxiomReport axiom_probe_vertex(int axiom, const SubdivisionRule& r, const Complex2D& c, VertexId v,
                                                    int stages, Mode mode = Mode::vertex, double threshold = 1.0,
                                                    const SolverOptions& opt = {}) {
    if (stages < 2) fail(ErrorKind::InvalidArgument, "probe needs stages >= 2");
    if (axiom < 0 || axiom > 2) fail(ErrorKind::InvalidArgument, "axiom must be 0, 1 or 2");
    if (v >= c.num_vertices()) fail(ErrorKind::UnknownVertex, "vertex " + std::to_string(v));
    if (c.is_boundary_vertex(v)) fail(ErrorKind::NotInterior, "vertex " + std::to_string(v) + " is on the boundary");
    const auto tower = make_tower(c, r, stages);
    std::vector<int> st;
    std::vector<double> mods;
    std::vector<Layer> layers;
    for (int s = 1; s <= stages; ++s) {
        auto ring = vertex_ring(tower.stages[static_cast<std::size_t>(s)], v);
        const double m = modulus_sup(ring, mode, opt).value;
        st.push_back(s);
        mods.push_back(m);
        layers.push_back({std::move(ring), s, m});
    }
    if (axiom == 2) (void)layer_bound(tower, layers, v); // the layers must really nest
    return axiom_verdicts(axiom, std::move(st), std::move(mods), threshold);
}

// Probe of a fixed ring of c followed through the stages; both approximate
// moduli are recorded at every stage.
[[nodiscard]] inline AxiomReport axiom_probe_ring(int axiom, const SubdivisionRule& r, const RingMarking& ring,
                                                  int stages, Mode mode = Mode::vertex, double threshold = 1.0,
                                                  const SolverOptions& opt = {}) {
    if (stages < 2) fail(ErrorKind::InvalidArgument, "probe needs stages >= 2");
    std::set<VertexId> inner_v;
    for (auto v : edge_set_vertices(ring.complex, ring.inner)) inner_v.insert(v);
    std::vector<int> st;
    std::vector<double> mods;
    auto cur = ring.complex;
    for (int s = 0; s <= stages; ++s) {
        if (s > 0) cur = subdivide(cur, r);
        const auto cycles = cur.boundary_cycles();
        if (cycles.size() != 2) fail(ErrorKind::NotAnAnnulus, "subdivided ring lost its shape");
        // vertex ids survive subdivision, so the inner cycle is the one through old inner vertices
        bool first_inner = false;
        for (const auto& se : cycles[0])
            if (inner_v.count(cur.tail(se))) first_inner = true;
        const auto sub_ring = ring_from_annulus(cur, !first_inner);
        st.push_back(s);
        mods.push_back(modulus_sup(sub_ring, mode, opt).value);
        st.push_back(s);
        mods.push_back(modulus_inf(sub_ring, mode, opt).value);
    }
    return axiom_verdicts(axiom, std::move(st), std::move(mods), threshold);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

[[nodiscard]] inline nlohmann::json report_to_json(const CriterionReport& r) {
    nlohmann::json j;
    j["M"] = r.M;
    j["A_max"] = r.A_max;
    j["quad_count"] = r.quad_count;
    j["per_kind_min"] = r.per_kind_min;
    j["per_level_min"] = r.per_level_min;
    j["monotone"] = r.monotone;
    j["levels"] = r.levels;
    j["mode"] = std::string(to_string(r.mode));
    j["normalization"] = "each quad's optimal weighting scaled to unit area before summing";
    return j;
}

[[nodiscard]] inline nlohmann::json report_to_json(const LayerEstimate& e) {
    nlohmann::json j;
    j["moduli"] = e.moduli;
    j["stages"] = e.stages;
    j["bound"] = e.bound;
    j["vertex"] = e.vertex ? nlohmann::json(*e.vertex) : nlohmann::json(nullptr);
    return j;
}

[[nodiscard]] inline nlohmann::json report_to_json(const AxiomReport& r) {
    nlohmann::json j;
    j["axiom"] = r.axiom;
    j["empirical"] = true;
    j["stages"] = r.stages;
    j["moduli"] = r.moduli;
    if (!r.stages.empty()) j["stage_range"] = {r.stages.front(), r.stages.back()};
    if (r.axiom == 0) j["infimum"] = r.infimum;
    if (r.axiom == 1) {
        j["r"] = r.r;
        j["K"] = r.K;
    }
    if (r.axiom == 2) {
        j["layered"] = r.layered;
        j["threshold"] = r.threshold;
        j["stage_reaching_threshold"] =
            r.stage_reaching_threshold ? nlohmann::json(*r.stage_reaching_threshold) : nlohmann::json(nullptr);
    }
    return j;
}

} // namespace subdiv
