#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "subdiv/active_set.hpp"
#include "subdiv/carrier_graph.hpp"
#include "subdiv/marking.hpp"
#include "subdiv/nnls.hpp"

namespace subdiv {

enum class PathKind { connecting, essential_loop };
enum class Which { sup, inf };

[[nodiscard]] constexpr std::string_view to_string(PathKind k) noexcept {
    return k == PathKind::connecting ? "connecting" : "essential-loop";
}

struct WeightFunction {
    Carrier carrier = Carrier::vertices;
    std::vector<double> weights;
};

struct PathConstraint {
    std::vector<std::uint32_t> carriers; // sorted
    PathKind kind = PathKind::connecting;
};

struct ModulusResult {
    double value = 0;
    Mode mode = Mode::vertex;
    Which which = Which::sup;
    WeightFunction weights;               // normalized so the shortest path has length 1
    std::vector<PathConstraint> certificate;
    int iterations = 0;
    double residual = 0;                  // shortest path length minus 1 under the raw QP weights
    double area = 0;
    std::vector<double> objective_history; // restricted-QP optimum per iteration
};

struct SolverOptions {
    double tol = 1e-7;
    int max_iterations = 10000;
    std::size_t brute_force_limit = 14;
};

// ---------------------------------------------------------------------------
// Height, circumference, area
// ---------------------------------------------------------------------------

inline void check_carrier(const MarkedRegion& m, const WeightFunction& w, Mode mode) {
    const auto expected = mode == Mode::vertex ? m.complex->num_vertices() : m.complex->num_faces();
    if (w.carrier != carrier_of(mode))
        fail(ErrorKind::CarrierMismatch, "mode " + std::string(to_string(mode)) + " needs weights on " +
                                             std::string(to_string(carrier_of(mode))));
    if (w.weights.size() != expected)
        fail(ErrorKind::CarrierMismatch, "weight function has " + std::to_string(w.weights.size()) +
                                             " entries, expected " + std::to_string(expected));
    for (double x : w.weights)
        if (!(x >= 0)) fail(ErrorKind::NonPositive, "weights must be nonnegative");
}

[[nodiscard]] inline double area(const WeightFunction& w) {
    double a = 0;
    for (double x : w.weights) a += x * x;
    return a;
}

template <typename Marked>
[[nodiscard]] double height(const Marked& marked, const WeightFunction& w, Mode mode) {
    const auto m = region_of(marked);
    check_carrier(m, w, mode);
    return shortest_connecting(build_carrier_graph(m, mode), w.weights);
}

[[nodiscard]] inline double circumference(const RingMarking& ring, const WeightFunction& w, Mode mode) {
    const auto m = region_of(ring);
    check_carrier(m, w, mode);
    return shortest_essential(build_carrier_graph(m, mode), w.weights);
}

// ---------------------------------------------------------------------------
// Cutting-plane solver
// ---------------------------------------------------------------------------

namespace detail {

// Restricted program min |x|^2 s.t. each stored path has length >= 1, solved
// as a least-distance program through NNLS on the Gram matrix
// G_ij = |p_i cap p_j| + 1, extended as paths arrive.
class PathProgram {
public:
    explicit PathProgram(std::size_t n) : incidence_(n) {}

    bool add(std::vector<std::uint32_t> p) {
        if (!known_.insert(p).second) return false;
        for (auto c : p) incidence_[c].push_back(static_cast<int>(paths_.size()));
        paths_.push_back(std::move(p));
        return true;
    }

    // Returns the restricted optimum x.
    std::vector<double> solve() {
        grow();
        const auto m = static_cast<Eigen::Index>(paths_.size());
        nnls_gram(G_, Eigen::VectorXd::Ones(m), u_, 1e-13);
        const double s = u_.sum();
        if (!(s < 1.0)) fail(ErrorKind::NoPath, "path constraints are infeasible");
        std::vector<double> x(incidence_.size(), 0.0);
        for (Eigen::Index i = 0; i < m; ++i)
            if (u_[i] > 0)
                for (auto c : paths_[static_cast<std::size_t>(i)]) x[c] += u_[i];
        for (auto& v : x) v /= (1.0 - s);
        return x;
    }

    [[nodiscard]] std::vector<PathConstraint> active(PathKind kind) const {
        std::vector<PathConstraint> out;
        for (std::size_t i = 0; i < paths_.size(); ++i)
            if (u_[static_cast<Eigen::Index>(i)] > 0) out.push_back({paths_[i], kind});
        return out;
    }

    [[nodiscard]] std::size_t size() const noexcept { return paths_.size(); }

private:
    // Extends the Gram matrix by the rows added since the last solve.
    void grow() {
        const auto old = G_.rows();
        const auto m = static_cast<Eigen::Index>(paths_.size());
        if (old == m) return;
        Eigen::MatrixXd G(m, m);
        G.topLeftCorner(old, old) = G_;
        std::vector<int> overlap(static_cast<std::size_t>(m));
        for (Eigen::Index i = old; i < m; ++i) {
            std::fill(overlap.begin(), overlap.end(), 0);
            for (auto c : paths_[static_cast<std::size_t>(i)])
                for (auto j : incidence_[c]) ++overlap[static_cast<std::size_t>(j)];
            for (Eigen::Index j = 0; j < m; ++j) G(i, j) = G(j, i) = overlap[static_cast<std::size_t>(j)] + 1.0;
        }
        G_ = std::move(G);
        u_.conservativeResize(m);
        for (Eigen::Index i = old; i < m; ++i) u_[i] = 0;
    }

    std::vector<std::vector<int>> incidence_;
    std::vector<std::vector<std::uint32_t>> paths_;
    std::set<std::vector<std::uint32_t>> known_;
    Eigen::MatrixXd G_;
    Eigen::VectorXd u_;
};

inline ModulusResult cutting_plane(const CarrierGraph& g, Mode mode, Which which, const SolverOptions& opt) {
    const PathKind kind = which == Which::sup ? PathKind::connecting : PathKind::essential_loop;
    const auto inf = std::numeric_limits<double>::infinity();
    auto separate = [&](const std::vector<double>& w, double keep_below) -> std::pair<double, std::vector<PathHit>> {
        if (which == Which::sup) {
            auto hits = connecting_paths(g, w);
            const double best = hits.empty() ? inf : hits.front().length;
            std::vector<PathHit> kept;
            for (auto& h : hits)
                if (h.length < keep_below) kept.push_back(std::move(h));
            return {best, std::move(kept)};
        }
        return essential_loops(g, w, keep_below);
    };

    PathProgram prog(g.n);
    // Seed with hop-shortest paths.
    {
        const std::vector<double> unit(g.n, 1.0);
        auto [best, hits] = separate(unit, inf);
        if (hits.empty() || best == inf)
            fail(ErrorKind::NoPath, which == Which::sup ? "the marked boundaries are not joined by any path"
                                                        : "the ring has no essential loop");
        for (auto& h : hits) prog.add(std::move(h.carriers));
    }
    ModulusResult r;
    r.mode = mode;
    r.which = which;
    std::vector<double> x;
    double shortest = 0;
    for (int iter = 1;; ++iter) {
        if (iter > opt.max_iterations) fail(ErrorKind::IterationLimit, "cutting-plane iteration cap reached");
        x = prog.solve();
        double a = 0;
        for (double v : x) a += v * v;
        r.objective_history.push_back(a);
        r.iterations = iter;
        auto [best, hits] = separate(x, 1.0 - opt.tol);
        shortest = best;
        bool added = false;
        for (auto& h : hits) added = prog.add(std::move(h.carriers)) || added;
        if (!added) break;
    }
    r.residual = shortest - 1.0;
    r.certificate = prog.active(kind);
    r.weights.carrier = carrier_of(mode);
    r.weights.weights = x;
    for (auto& v : r.weights.weights) v /= shortest;
    r.area = area(r.weights);
    r.value = which == Which::sup ? 1.0 / r.area : r.area;
    return r;
}

} // namespace detail

template <typename Marked>
[[nodiscard]] ModulusResult modulus_sup(const Marked& marked, Mode mode, const SolverOptions& opt = {}) {
    const auto g = build_carrier_graph(region_of(marked), mode);
    return detail::cutting_plane(g, mode, Which::sup, opt);
}

[[nodiscard]] inline ModulusResult modulus_inf(const RingMarking& ring, Mode mode, const SolverOptions& opt = {}) {
    const auto g = build_carrier_graph(region_of(ring), mode);
    return detail::cutting_plane(g, mode, Which::inf, opt);
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

// Every minimal carrier set containing a connecting path (sup) or an
// essential loop (inf), found by subset enumeration.
[[nodiscard]] inline std::vector<std::vector<std::uint32_t>> minimal_path_sets(const CarrierGraph& g, Which which) {
    const auto n = g.n;
    auto contains = [&](const std::vector<bool>& in) {
        return which == Which::sup ? contains_connecting_path(g, in) : contains_essential_loop(g, in);
    };
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<bool> in(n);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i) in[i] = (mask >> i) & 1u;
        if (!contains(in)) continue;
        bool minimal = true;
        for (std::size_t i = 0; i < n && minimal; ++i) {
            if (!in[i]) continue;
            in[i] = false;
            if (contains(in)) minimal = false;
            in[i] = true;
        }
        if (!minimal) continue;
        std::vector<std::uint32_t> s;
        for (std::uint32_t i = 0; i < n; ++i)
            if (in[i]) s.push_back(i);
        out.push_back(std::move(s));
    }
    return out;
}

namespace detail {

inline ModulusResult brute_force(const CarrierGraph& g, Mode mode, Which which, const SolverOptions& opt) {
    if (g.n > opt.brute_force_limit)
        fail(ErrorKind::TooLarge, std::to_string(g.n) + " carriers exceed the brute-force bound of " +
                                      std::to_string(opt.brute_force_limit));
    const auto sets = minimal_path_sets(g, which);
    if (sets.empty())
        fail(ErrorKind::NoPath, which == Which::sup ? "the marked boundaries are not joined by any path"
                                                    : "the ring has no essential loop");
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sets.size()), static_cast<Eigen::Index>(g.n));
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (auto c : sets[i]) A(static_cast<Eigen::Index>(i), c) = 1.0;
    const auto qp = min_norm_covering(A);
    ModulusResult r;
    r.mode = mode;
    r.which = which;
    r.iterations = qp.iterations;
    r.weights.carrier = carrier_of(mode);
    r.weights.weights.assign(qp.x.data(), qp.x.data() + qp.x.size());
    double shortest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sets.size(); ++i) shortest = std::min(shortest, set_length(sets[i], r.weights.weights));
    r.residual = shortest - 1.0;
    for (auto i : qp.active) r.certificate.push_back({sets[static_cast<std::size_t>(i)],
                                                      which == Which::sup ? PathKind::connecting : PathKind::essential_loop});
    r.area = area(r.weights);
    r.value = which == Which::sup ? 1.0 / r.area : r.area;
    return r;
}

} // namespace detail

template <typename Marked>
[[nodiscard]] ModulusResult brute_force_modulus(const Marked& marked, Mode mode, Which which = Which::sup,
                                                const SolverOptions& opt = {}) {
    if constexpr (!std::is_same_v<Marked, RingMarking>)
        if (which == Which::inf) fail(ErrorKind::NotARing, "m_inf is defined for rings only");
    return detail::brute_force(build_carrier_graph(region_of(marked), mode), mode, which, opt);
}

// (fat, skinny) values of M_sup on a quadrilateral.
[[nodiscard]] inline std::pair<double, double> fat_skinny_gap(const QuadMarking& q, const SolverOptions& opt = {}) {
    return {modulus_sup(q, Mode::fat, opt).value, modulus_sup(q, Mode::skinny, opt).value};
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

[[nodiscard]] inline nlohmann::json result_to_json(const ModulusResult& r) {
    nlohmann::json j;
    j["value"] = r.value;
    j["mode"] = std::string(to_string(r.mode));
    j["which"] = r.which == Which::sup ? "sup" : "inf";
    j["carrier"] = std::string(to_string(r.weights.carrier));
    nlohmann::json w = nlohmann::json::object();
    for (std::size_t i = 0; i < r.weights.weights.size(); ++i) w[std::to_string(i)] = r.weights.weights[i];
    j["weights"] = std::move(w);
    nlohmann::json cert = nlohmann::json::array();
    for (const auto& p : r.certificate) cert.push_back(p.carriers);
    j["certificate"] = std::move(cert);
    j["iterations"] = r.iterations;
    j["residual"] = r.residual;
    return j;
}

} // namespace subdiv
