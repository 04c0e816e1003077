#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subdiv/complex.hpp"
#include "subdiv/marking.hpp"

namespace subdiv {

enum class Mode { vertex, fat, skinny };
enum class Carrier { vertices, tiles };

[[nodiscard]] constexpr std::string_view to_string(Mode m) noexcept {
    switch (m) {
    case Mode::vertex: return "vertex";
    case Mode::fat: return "fat";
    case Mode::skinny: return "skinny";
    }
    return "unknown";
}

[[nodiscard]] constexpr std::string_view to_string(Carrier c) noexcept {
    return c == Carrier::vertices ? "vertices" : "tiles";
}

[[nodiscard]] constexpr Carrier carrier_of(Mode m) noexcept {
    return m == Mode::vertex ? Carrier::vertices : Carrier::tiles;
}

[[nodiscard]] inline Mode parse_mode(std::string_view s) {
    if (s == "vertex") return Mode::vertex;
    if (s == "fat" || s == "tile-fat") return Mode::fat;
    if (s == "skinny" || s == "tile-skinny") return Mode::skinny;
    fail(ErrorKind::InvalidArgument, "unknown mode '" + std::string(s) + "'");
}

// A marked region reduced to what the solvers need: the complex, the two
// boundary arcs that paths must join, and whether it is a ring.
struct MarkedRegion {
    const Complex2D* complex = nullptr;
    std::vector<EdgeId> from; // inner boundary / top arc
    std::vector<EdgeId> to;   // outer boundary / bottom arc
    bool ring = false;
};

[[nodiscard]] inline MarkedRegion region_of(const RingMarking& r) { return {&r.complex, r.inner, r.outer, true}; }
[[nodiscard]] inline MarkedRegion region_of(const QuadMarking& q) { return {&q.complex, q.top(), q.bottom(), false}; }

struct Arc {
    std::uint32_t to;
    int shift; // layer change in the infinite cyclic cover of a ring
    bool operator<(const Arc& o) const { return to != o.to ? to < o.to : shift < o.shift; }
    bool operator==(const Arc& o) const { return to == o.to && shift == o.shift; }
};

// Carriers with their adjacency. For rings every arc records how it moves
// between sheets of the infinite cyclic cover, which is how essential loops are
// recognized: a closed walk is essential iff its shifts sum to a nonzero value.
struct CarrierGraph {
    Mode mode = Mode::vertex;
    std::size_t n = 0;
    std::vector<std::vector<Arc>> adj;
    std::vector<std::uint32_t> sources; // carriers touching `from`
    std::vector<std::uint32_t> targets; // carriers touching `to`
    bool ring = false;
};

namespace detail {

// Integer 1-cochain on edges (value for the a -> b direction) whose sum around
// a closed edge walk is its winding number in the ring. Built from a shortest
// dual path of faces from the inner to the outer boundary.
inline std::vector<int> ring_cocycle(const Complex2D& c, const std::vector<EdgeId>& inner,
                                     const std::vector<EdgeId>& outer) {
    std::vector<bool> is_inner(c.num_edges(), false), is_outer(c.num_edges(), false);
    for (auto e : inner) is_inner[e] = true;
    for (auto e : outer) is_outer[e] = true;
    auto sign_in = [&](FaceId f, EdgeId e) { return c.face(f).boundary[c.position_in_face(f, e)].reversed ? -1 : 1; };

    std::vector<FaceId> prev(c.num_faces(), kNone);
    std::vector<EdgeId> via(c.num_faces(), kNone);
    std::vector<bool> seen(c.num_faces(), false);
    std::deque<FaceId> queue;
    for (FaceId f = 0; f < c.num_faces(); ++f)
        for (const auto& s : c.face(f).boundary)
            if (is_inner[s.edge] && !seen[f]) {
                seen[f] = true;
                via[f] = s.edge;
                queue.push_back(f);
            }
    FaceId last = kNone;
    while (!queue.empty() && last == kNone) {
        const auto f = queue.front();
        queue.pop_front();
        for (const auto& s : c.face(f).boundary)
            if (is_outer[s.edge]) {
                last = f;
                break;
            }
        if (last != kNone) break;
        for (const auto& s : c.face(f).boundary) {
            const auto& fs = c.edge_faces(s.edge);
            if (fs.size() != 2) continue;
            const auto g = fs[0] == f ? fs[1] : fs[0];
            if (seen[g]) continue;
            seen[g] = true;
            prev[g] = f;
            via[g] = s.edge;
            queue.push_back(g);
        }
    }
    if (last == kNone) fail(ErrorKind::NotARing, "inner and outer boundaries are not joined by faces");
    std::vector<int> omega(c.num_edges(), 0);
    for (const auto& s : c.face(last).boundary)
        if (is_outer[s.edge]) {
            omega[s.edge] = sign_in(last, s.edge);
            break;
        }
    for (auto f = last; f != kNone; f = prev[f]) {
        const auto e = via[f];
        if (prev[f] == kNone) omega[e] = -sign_in(f, e); // entering from the inner boundary
        else omega[e] = sign_in(prev[f], e);
    }
    return omega;
}

inline int oriented(const std::vector<int>& omega, const Complex2D& c, EdgeId e, VertexId from) {
    return c.edge(e).a == from ? omega[e] : -omega[e];
}

} // namespace detail

[[nodiscard]] inline CarrierGraph build_carrier_graph(const MarkedRegion& m, Mode mode) {
    const auto& c = *m.complex;
    CarrierGraph g;
    g.mode = mode;
    g.ring = m.ring;
    std::vector<int> omega;
    if (m.ring) omega = detail::ring_cocycle(c, m.from, m.to);
    auto shift_of = [&](EdgeId e, VertexId from) { return m.ring ? detail::oriented(omega, c, e, from) : 0; };

    const auto from_vertices = edge_set_vertices(c, m.from);
    const auto to_vertices = edge_set_vertices(c, m.to);

    if (mode == Mode::vertex) {
        g.n = c.num_vertices();
        g.adj.assign(g.n, {});
        for (EdgeId e = 0; e < c.num_edges(); ++e) {
            const auto& ed = c.edge(e);
            g.adj[ed.a].push_back({ed.b, shift_of(e, ed.a)});
            g.adj[ed.b].push_back({ed.a, shift_of(e, ed.b)});
        }
        g.sources.assign(from_vertices.begin(), from_vertices.end());
        g.targets.assign(to_vertices.begin(), to_vertices.end());
    } else {
        g.n = c.num_faces();
        g.adj.assign(g.n, {});
        // offset of each face corner in the face's own lift
        std::vector<std::map<VertexId, int>> offset(c.num_faces());
        for (FaceId f = 0; f < c.num_faces(); ++f) {
            int o = 0;
            for (const auto& s : c.face(f).boundary) {
                offset[f][c.tail(s)] = o;
                o += shift_of(s.edge, c.tail(s));
            }
        }
        if (mode == Mode::skinny) {
            for (EdgeId e = 0; e < c.num_edges(); ++e) {
                const auto& fs = c.edge_faces(e);
                if (fs.size() != 2) continue;
                const auto x = c.edge(e).a;
                const int d = offset[fs[0]].at(x) - offset[fs[1]].at(x);
                g.adj[fs[0]].push_back({fs[1], d});
                g.adj[fs[1]].push_back({fs[0], -d});
            }
        } else {
            for (VertexId x = 0; x < c.num_vertices(); ++x) {
                const auto& fs = c.vertex_faces(x);
                for (auto f : fs)
                    for (auto h : fs)
                        if (f != h) g.adj[f].push_back({h, offset[f].at(x) - offset[h].at(x)});
            }
        }
        auto touching = [&](const std::vector<VertexId>& vs) {
            std::vector<std::uint32_t> out;
            for (auto v : vs)
                for (auto f : c.vertex_faces(v)) out.push_back(f);
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
        };
        g.sources = touching(from_vertices);
        g.targets = touching(to_vertices);
    }
    for (auto& a : g.adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return g;
}

// ---------------------------------------------------------------------------
// Shortest paths with weights on carriers
// ---------------------------------------------------------------------------

struct PathHit {
    double length = std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> carriers; // sorted carrier set
};

namespace detail {

inline std::vector<std::uint32_t> as_set(std::vector<std::uint32_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline double set_length(const std::vector<std::uint32_t>& s, const std::vector<double>& w) {
    double t = 0;
    for (auto i : s) t += w[i];
    return t;
}

} // namespace detail

// Multi-source Dijkstra from the sources. Returns, for every reachable target,
// the carrier set of its tree path, trimmed so that it starts at the last
// source and meets no other target. Paths are sorted by length, then by set.
[[nodiscard]] inline std::vector<PathHit> connecting_paths(const CarrierGraph& g, const std::vector<double>& w) {
    using Item = std::pair<double, std::uint32_t>;
    const auto inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.n, inf);
    std::vector<std::uint32_t> parent(g.n, kNone);
    std::vector<bool> done(g.n, false), is_source(g.n, false), is_target(g.n, false);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (auto s : g.sources) {
        is_source[s] = true;
        dist[s] = w[s];
        pq.push({dist[s], s});
    }
    for (auto t : g.targets) is_target[t] = true;
    while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        if (done[u] || d > dist[u]) continue;
        done[u] = true;
        for (const auto& a : g.adj[u]) {
            const double nd = d + w[a.to];
            if (nd < dist[a.to] || (nd == dist[a.to] && !done[a.to] && parent[a.to] != kNone && u < parent[a.to])) {
                dist[a.to] = nd;
                parent[a.to] = u;
                pq.push({nd, a.to});
            }
        }
    }
    std::vector<PathHit> out;
    for (auto t : g.targets) {
        if (dist[t] == inf) continue;
        std::vector<std::uint32_t> path;
        bool clean = true;
        for (auto u = t; u != kNone; u = parent[u]) {
            if (u != t && is_target[u]) clean = false;
            path.push_back(u);
            if (is_source[u]) break;
        }
        if (!clean) continue;
        PathHit h;
        h.carriers = detail::as_set(std::move(path));
        h.length = detail::set_length(h.carriers, w);
        out.push_back(std::move(h));
    }
    std::sort(out.begin(), out.end(), [](const PathHit& a, const PathHit& b) {
        return a.length != b.length ? a.length < b.length : a.carriers < b.carriers;
    });
    return out;
}

// Shortest connecting path length; infinity when the arcs are not joined.
[[nodiscard]] inline double shortest_connecting(const CarrierGraph& g, const std::vector<double>& w) {
    const auto hits = connecting_paths(g, w);
    return hits.empty() ? std::numeric_limits<double>::infinity() : hits.front().length;
}

namespace detail {

// Loop through s that rises one sheet in the cover, searched in the layer
// window [-span, span + 1]. Nodes at or above `bound` are not expanded. Sets
// `escaped` when the window edge was reached more cheaply than the answer.
inline PathHit loop_from(const CarrierGraph& g, const std::vector<double>& w, std::uint32_t s, double bound, int span,
                         bool& escaped) {
    using Item = std::pair<double, std::uint64_t>;
    const int layers = 2 * span + 2;
    auto id = [&](std::uint32_t c, int layer) {
        return static_cast<std::uint64_t>(c) * static_cast<std::uint64_t>(layers) +
               static_cast<std::uint64_t>(layer + span);
    };
    const auto inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.n * static_cast<std::size_t>(layers), inf);
    std::vector<std::uint64_t> parent(dist.size(), std::numeric_limits<std::uint64_t>::max());
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    const auto start = id(s, 0), goal = id(s, 1);
    dist[start] = w[s];
    pq.push({w[s], start});
    double edge_min = inf;
    while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        if (d >= bound) break;
        if (u == goal) break;
        const auto c = static_cast<std::uint32_t>(u / static_cast<std::uint64_t>(layers));
        const int layer = static_cast<int>(u % static_cast<std::uint64_t>(layers)) - span;
        if (layer == -span || layer == span + 1) {
            edge_min = std::min(edge_min, d);
            continue;
        }
        for (const auto& a : g.adj[c]) {
            const int nl = layer + a.shift;
            if (nl < -span || nl > span + 1) {
                edge_min = std::min(edge_min, d);
                continue;
            }
            const auto v = id(a.to, nl);
            const double nd = d + w[a.to];
            if (nd < dist[v]) {
                dist[v] = nd;
                parent[v] = u;
                pq.push({nd, v});
            }
        }
    }
    PathHit h;
    if (dist[goal] < inf && dist[goal] < bound) {
        std::vector<std::uint32_t> path;
        for (auto u = goal; u != start; u = parent[u]) path.push_back(static_cast<std::uint32_t>(u / static_cast<std::uint64_t>(layers)));
        path.push_back(s);
        h.carriers = as_set(std::move(path));
        h.length = set_length(h.carriers, w);
    }
    escaped = edge_min < std::min(h.length, bound);
    return h;
}

} // namespace detail

// Essential loops through every carrier where the loop may cross the cut.
// Each start yields its shortest rising loop; loops with length >= keep_below
// are only tracked for the overall minimum. Returns (minimum, loops kept).
[[nodiscard]] inline std::pair<double, std::vector<PathHit>> essential_loops(const CarrierGraph& g,
                                                                             const std::vector<double>& w,
                                                                             double keep_below) {
    if (!g.ring) fail(ErrorKind::NotARing, "essential loops need a ring");
    std::vector<std::uint32_t> starts;
    for (std::uint32_t u = 0; u < g.n; ++u)
        for (const auto& a : g.adj[u])
            if (a.shift > 0) {
                starts.push_back(u);
                break;
            }
    double best = std::numeric_limits<double>::infinity();
    std::vector<PathHit> kept;
    std::set<std::vector<std::uint32_t>> seen;
    for (auto s : starts) {
        const double bound = std::max(best, keep_below);
        PathHit h;
        for (int span = 2;; span *= 2) {
            bool escaped = false;
            h = detail::loop_from(g, w, s, bound, span, escaped);
            if (!escaped || span > static_cast<int>(g.n) + 2) break;
        }
        if (h.carriers.empty()) continue;
        best = std::min(best, h.length);
        if (h.length < keep_below && seen.insert(h.carriers).second) kept.push_back(std::move(h));
    }
    std::sort(kept.begin(), kept.end(), [](const PathHit& a, const PathHit& b) {
        return a.length != b.length ? a.length < b.length : a.carriers < b.carriers;
    });
    return {best, std::move(kept)};
}

[[nodiscard]] inline double shortest_essential(const CarrierGraph& g, const std::vector<double>& w) {
    return essential_loops(g, w, -std::numeric_limits<double>::infinity()).first;
}

// Exact test used by the brute-force oracle: does the carrier subset contain
// an essential loop (ring) or a connecting path?
[[nodiscard]] inline bool contains_essential_loop(const CarrierGraph& g, const std::vector<bool>& in) {
    std::vector<int> level(g.n, 0);
    std::vector<bool> seen(g.n, false);
    for (std::uint32_t s = 0; s < g.n; ++s) {
        if (!in[s] || seen[s]) continue;
        seen[s] = true;
        std::vector<std::uint32_t> stack{s};
        while (!stack.empty()) {
            const auto u = stack.back();
            stack.pop_back();
            for (const auto& a : g.adj[u]) {
                if (!in[a.to]) continue;
                if (!seen[a.to]) {
                    seen[a.to] = true;
                    level[a.to] = level[u] + a.shift;
                    stack.push_back(a.to);
                } else if (level[a.to] != level[u] + a.shift) {
                    return true;
                }
            }
        }
    }
    return false;
}

[[nodiscard]] inline bool contains_connecting_path(const CarrierGraph& g, const std::vector<bool>& in) {
    std::vector<bool> seen(g.n, false), target(g.n, false);
    for (auto t : g.targets) target[t] = true;
    std::vector<std::uint32_t> stack;
    for (auto s : g.sources)
        if (in[s] && !seen[s]) {
            seen[s] = true;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        if (target[u]) return true;
        for (const auto& a : g.adj[u])
            if (in[a.to] && !seen[a.to]) {
                seen[a.to] = true;
                stack.push_back(a.to);
            }
    }
    return false;
}

} // namespace subdiv
