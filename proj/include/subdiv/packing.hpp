#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <deque>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "subdiv/complex.hpp"
#include "subdiv/error.hpp"
#include "subdiv/io.hpp"

namespace subdiv {

using Point = std::complex<double>;

struct Circle {
    Point center;
    double radius = 0;
};

// Maximal packing of a triangulated disk in the unit disk. Radii are solved
// in hyperbolic terms, t = exp(-2h) per vertex, with boundary vertices held
// at t = 0 (horocycles); `radii` and `centers` are the Euclidean circles.
struct Packing {
    Complex2D complex;
    std::vector<double> t;
    std::vector<double> radii;
    std::vector<Point> centers;
    std::vector<VertexId> order; // placement order
    int sweeps = 0;
    double residual = 0;         // max hyperbolic angle-sum residual at exit
};

namespace detail {

// Angle at v of the triangle (v,u,w) of tangent hyperbolic circles.
inline double hyp_angle(double tv, double tu, double tw) {
    const double q = tv * (1 - tu) * (1 - tw) / ((1 - tv * tu * tw) * (1 - tv));
    return 2 * std::atan(std::sqrt(std::max(q, 0.0)));
}

inline double hyp_angle_sum(const Complex2D& c, const std::vector<double>& t, VertexId v) {
    double s = 0;
    for (auto f : c.vertex_faces(v)) {
        const auto vs = c.face_vertices(f);
        std::size_t i = 0;
        while (vs[i] != v) ++i;
        s += hyp_angle(t[v], t[vs[(i + 1) % 3]], t[vs[(i + 2) % 3]]);
    }
    return s;
}

// Uniform-neighbor update: pick the common neighbor label reproducing the
// current angle sum, then the label at v giving exactly 2pi against it.
inline double uniform_neighbor_update(double tv, double sum, std::size_t k) {
    const double kd = static_cast<double>(k);
    const double half = std::tan(sum / kd / 2);
    const double T = half * half * (1 - tv) / tv;
    const double disc = std::max(0.0, 1 - (1 + T * tv) * (1 - T));
    const double tn = std::clamp((1 - std::sqrt(disc)) / (1 + T * tv), 0.0, 1.0 - 1e-15);
    const double g0 = std::tan(std::numbers::pi / kd);
    const double G = g0 * g0;
    if (tn <= 0) return G / (G + 1);
    const double B = G * (1 + tn * tn) + (1 - tn) * (1 - tn);
    const double r = std::max(0.0, B * B - 4 * G * G * tn * tn);
    const double out = (B - std::sqrt(r)) / (2 * G * tn * tn);
    return std::clamp(out, 1e-300, 1.0 - 1e-16);
}

inline Point mobius(Point a, Point z) { return (z + a) / (1.0 + std::conj(a) * z); }

inline Circle circumcircle(Point a, Point b, Point c) {
    const Point ab = b - a, ac = c - a;
    const double d = 2 * (ab.real() * ac.imag() - ab.imag() * ac.real());
    const double nb = std::norm(ab), nc = std::norm(ac);
    const Point o{(ac.imag() * nb - ab.imag() * nc) / d, (ab.real() * nc - ac.real() * nb) / d};
    return {a + o, std::abs(o)};
}

template <class F>
Circle map_circle(const Circle& c, F f) {
    const double r = c.radius;
    return circumcircle(f(c.center + Point{r, 0}), f(c.center + Point{0, r}), f(c.center - Point{r, 0}));
}

// Euclidean radius of the hyperbolic disk of label t centered at 0.
inline double euclid_radius(double t) {
    const double s = std::sqrt(t);
    return (1 - s) / (1 + s);
}

// Euclidean image of that disk when its hyperbolic center is moved to a.
inline Circle disk_at(Point a, double t) {
    const double rho = euclid_radius(t), na = std::norm(a);
    const double den = 1 - rho * rho * na;
    return {a * (1 - rho * rho) / den, rho * (1 - na) / den};
}

struct Layout {
    const Complex2D& c;
    const std::vector<double>& t;
    std::vector<bool> placed;
    std::vector<Point> where; // hyperbolic center, or ideal point for horocycles
    std::vector<Circle> circle;
    std::vector<VertexId> order;

    Layout(const Complex2D& cx, const std::vector<double>& tx)
        : c(cx), t(tx), placed(cx.num_vertices(), false), where(cx.num_vertices()),
          circle(cx.num_vertices()) {}

    bool horo(VertexId v) const { return t[v] == 0; }

    void set(VertexId v, Point p, Circle e) {
        placed[v] = true;
        where[v] = p;
        circle[v] = e;
        order.push_back(v);
    }

    // Places w at direction theta as seen from the interior vertex p.
    void from_pivot(VertexId p, VertexId w, double theta) {
        const Point a = where[p];
        const Point dir = std::polar(1.0, theta);
        if (horo(w)) {
            const double r = (1 - euclid_radius(t[p])) / 2;
            const Circle local{(1 - r) * dir, r};
            set(w, mobius(a, dir), map_circle(local, [&](Point z) { return mobius(a, z); }));
        } else {
            const Point centre = mobius(a, euclid_radius(t[p] * t[w]) * dir);
            set(w, centre, disk_at(centre, t[w]));
        }
    }

    double direction(VertexId p, VertexId q) const { return std::arg(mobius(-where[p], where[q])); }

    double angle_at(VertexId v, VertexId u, VertexId w) const { return hyp_angle(t[v], t[u], t[w]); }

    // Face (u,v,w) in orientation order with u, v placed.
    void place_third(VertexId u, VertexId v, VertexId w) {
        if (!horo(u)) {
            from_pivot(u, w, direction(u, v) + angle_at(u, v, w));
        } else if (!horo(v)) {
            from_pivot(v, w, direction(v, u) - angle_at(v, w, u));
        } else {
            // Both horocycles: send u's tangency point to infinity, where u
            // becomes the line y = H and v a circle of diameter H on the axis.
            const Point z = where[u], I{0, 1};
            auto to_h = [&](Point q) { return I * (z + q) / (z - q); };
            auto from_h = [&](Point p) { return z * (p - I) / (p + I); };
            const Point off = circle[u].center - (where[u] - circle[u].center);
            const double H = to_h(off).imag();
            const double xv = to_h(where[v]).real();
            const double tw = t[w];
            const Point hc{xv + H * std::sqrt(1 - tw), H * std::sqrt(tw)};
            if (horo(w)) {
                const Circle up{{hc.real(), H / 2}, H / 2};
                set(w, from_h(hc), map_circle(up, from_h));
            } else {
                const Point centre = from_h(hc);
                set(w, centre, disk_at(centre, tw));
            }
        }
    }

    void root() {
        VertexId r = kNone;
        for (VertexId v = 0; v < c.num_vertices(); ++v)
            if (!horo(v)) {
                r = v;
                break;
            }
        if (r == kNone) {
            const auto vs = c.face_vertices(0);
            const double rad = std::sqrt(3.0) / (2 + std::sqrt(3.0));
            for (int i = 0; i < 3; ++i) {
                const Point dir = std::polar(1.0, std::numbers::pi / 2 + 2 * std::numbers::pi * i / 3);
                set(vs[static_cast<std::size_t>(i)], dir, {(1 - rad) * dir, rad});
            }
            return;
        }
        set(r, 0.0, disk_at(0.0, t[r]));
        const auto vs = c.face_vertices(c.vertex_faces(r).front());
        std::size_t i = 0;
        while (vs[i] != r) ++i;
        from_pivot(r, vs[(i + 1) % 3], 0.0);
    }

    void run() {
        root();
        std::deque<FaceId> queue;
        std::vector<bool> done(c.num_faces(), false);
        auto push_faces = [&](VertexId v) {
            for (auto f : c.vertex_faces(v))
                if (!done[f]) queue.push_back(f);
        };
        for (auto v : order) push_faces(v);
        while (!queue.empty()) {
            const FaceId f = queue.front();
            queue.pop_front();
            if (done[f]) continue;
            const auto vs = c.face_vertices(f);
            int count = 0;
            std::size_t missing = 0;
            for (std::size_t i = 0; i < 3; ++i) {
                if (placed[vs[i]]) ++count;
                else missing = i;
            }
            if (count == 3) {
                done[f] = true;
                continue;
            }
            if (count < 2) continue;
            const VertexId w = vs[missing];
            place_third(vs[(missing + 1) % 3], vs[(missing + 2) % 3], w);
            done[f] = true;
            push_faces(w);
        }
    }
};

} // namespace detail

inline void require_triangulated_disk(const Complex2D& c) {
    for (FaceId f = 0; f < c.num_faces(); ++f)
        if (c.face(f).boundary.size() != 3)
            fail(ErrorKind::NotATriangulatedDisk, "face " + std::to_string(f) + " is not a triangle");
    if (!is_disk(c)) fail(ErrorKind::NotATriangulatedDisk, "complex is not a disk");
}

[[nodiscard]] inline Packing pack(const Complex2D& c, double tol = 1e-10, int max_sweeps = 100000) {
    require_triangulated_disk(c);
    const auto nv = c.num_vertices();
    Packing p;
    p.complex = c;
    p.t.assign(nv, 0.0);
    std::vector<VertexId> interior;
    for (VertexId v = 0; v < nv; ++v)
        if (!c.is_boundary_vertex(v)) {
            interior.push_back(v);
            p.t[v] = 0.25;
        }
    const double two_pi = 2 * std::numbers::pi;
    auto worst = [&] {
        double r = 0;
        for (auto v : interior) r = std::max(r, std::abs(detail::hyp_angle_sum(c, p.t, v) - two_pi));
        return r;
    };
    p.residual = worst();
    while (p.residual >= tol) {
        if (p.sweeps >= max_sweeps) fail(ErrorKind::IterationLimit, "packing did not converge");
        for (auto v : interior)
            p.t[v] = detail::uniform_neighbor_update(p.t[v], detail::hyp_angle_sum(c, p.t, v), c.valence(v));
        ++p.sweeps;
        p.residual = worst();
    }
    detail::Layout lay(c, p.t);
    lay.run();
    p.radii.resize(nv);
    p.centers.resize(nv);
    for (VertexId v = 0; v < nv; ++v) {
        p.radii[v] = lay.circle[v].radius;
        p.centers[v] = lay.circle[v].center;
    }
    p.order = std::move(lay.order);
    return p;
}

// Euclidean angle sum at an interior vertex from the radii alone.
[[nodiscard]] inline double angle_sum(const Packing& p, VertexId v) {
    const auto& c = p.complex;
    if (v >= c.num_vertices()) fail(ErrorKind::UnknownVertex, "vertex " + std::to_string(v));
    if (c.is_boundary_vertex(v)) fail(ErrorKind::BoundaryVertex, "vertex " + std::to_string(v) + " is on the boundary");
    double s = 0;
    for (auto f : c.vertex_faces(v)) {
        const auto vs = c.face_vertices(f);
        std::size_t i = 0;
        while (vs[i] != v) ++i;
        const double rv = p.radii[v], ru = p.radii[vs[(i + 1) % 3]], rw = p.radii[vs[(i + 2) % 3]];
        const double a = ru + rw, b = rv + ru, d = rv + rw;
        s += std::acos(std::clamp((b * b + d * d - a * a) / (2 * b * d), -1.0, 1.0));
    }
    return s;
}

[[nodiscard]] inline double max_angle_residual(const Packing& p) {
    double r = 0;
    for (VertexId v = 0; v < p.complex.num_vertices(); ++v)
        if (!p.complex.is_boundary_vertex(v)) r = std::max(r, std::abs(angle_sum(p, v) - 2 * std::numbers::pi));
    return r;
}

// Max over all edges of |dist(centers) - (r_u + r_v)|.
[[nodiscard]] inline double tangency_discrepancy(const Packing& p) {
    double r = 0;
    for (const auto& e : p.complex.edges())
        r = std::max(r, std::abs(std::abs(p.centers[e.a] - p.centers[e.b]) - (p.radii[e.a] + p.radii[e.b])));
    return r;
}

// Max over boundary vertices of |1 - (|center| + radius)|.
[[nodiscard]] inline double boundary_discrepancy(const Packing& p) {
    double r = 0;
    for (VertexId v = 0; v < p.complex.num_vertices(); ++v)
        if (p.complex.is_boundary_vertex(v)) r = std::max(r, std::abs(1 - std::abs(p.centers[v]) - p.radii[v]));
    return r;
}

// Radius of v over the largest radius among its neighbors.
[[nodiscard]] inline double radius_ratio(const Packing& p, VertexId v) {
    double m = 0;
    for (auto e : p.complex.vertex_edges(v)) m = std::max(m, p.radii[p.complex.other_end(e, v)]);
    return p.radii.at(v) / m;
}

enum class ColorBy { none, type, stage };

inline ColorBy parse_color_by(const std::string& s) {
    if (s == "none") return ColorBy::none;
    if (s == "type") return ColorBy::type;
    if (s == "stage") return ColorBy::stage;
    fail(ErrorKind::InvalidArgument, "unknown colouring '" + s + "'");
}

// `stage_sizes` holds the vertex count of each stage of a subdivision
// sequence; the stage of v is the first one containing it.
[[nodiscard]] inline std::string svg(const Packing& p, ColorBy color = ColorBy::none,
                                     const std::vector<std::size_t>& stage_sizes = {}) {
    static const char* palette[] = {"#e6f0ff", "#ffe3c2", "#d6f5d6", "#f7d4e6",
                                    "#fff4b3", "#dcd0ff", "#c8eef0", "#f0d9c8"};
    const auto& c = p.complex;
    std::map<std::string, std::size_t> type_index;
    if (color == ColorBy::type) {
        if (!c.has_tile_types()) fail(ErrorKind::InvalidArgument, "complex has no tile types");
        for (const auto& s : c.tile_types()) type_index.emplace(s, 0);
        std::size_t i = 0;
        for (auto& [_, idx] : type_index) idx = i++;
    }
    auto fmt = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", x);
        std::string s = buf;
        if (s == "-0.0000") s = "0.0000";
        return s;
    };
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1 -1 2 2\" width=\"800\" height=\"800\">\n";
    for (VertexId v = 0; v < c.num_vertices(); ++v) {
        std::size_t k = 0;
        if (color == ColorBy::type && !c.vertex_faces(v).empty()) {
            const FaceId f = *std::min_element(c.vertex_faces(v).begin(), c.vertex_faces(v).end());
            k = type_index[c.tile_types()[f]];
        } else if (color == ColorBy::stage) {
            while (k < stage_sizes.size() && stage_sizes[k] <= v) ++k;
        }
        const char* fill = color == ColorBy::none ? "none" : palette[k % std::size(palette)];
        out += "<circle data-vertex=\"" + std::to_string(v) + "\" cx=\"" + fmt(p.centers[v].real()) + "\" cy=\"" +
               fmt(-p.centers[v].imag()) + "\" r=\"" + fmt(p.radii[v]) + "\" fill=\"" + fill +
               "\" stroke=\"#000\" stroke-width=\"0.002\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

inline void render_svg(const Packing& p, const std::string& path, ColorBy color = ColorBy::none,
                       const std::vector<std::size_t>& stage_sizes = {}) {
    write_file(path, svg(p, color, stage_sizes));
}

} // namespace subdiv
