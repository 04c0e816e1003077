#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "subdiv/error.hpp"

namespace subdiv {

// Lawson-Hanson active-set NNLS in Gram form:
//   minimize u'Gu - 2 b'u  subject to u >= 0,
// with G symmetric positive semidefinite. `u` is used as the warm start and
// must be nonnegative. Returns the number of passive-set changes.
inline int nnls_gram(const Eigen::MatrixXd& G, const Eigen::VectorXd& b, Eigen::VectorXd& u, double tol = 1e-12,
                     int max_iter = 100000) {
    const auto m = static_cast<Eigen::Index>(b.size());
    if (u.size() != m) u = Eigen::VectorXd::Zero(m);
    std::vector<bool> passive(static_cast<std::size_t>(m), false);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (u[i] > 0) passive[static_cast<std::size_t>(i)] = true;
        else u[i] = 0;
    }
    auto solve_passive = [&](Eigen::VectorXd& z) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < m; ++i)
            if (passive[static_cast<std::size_t>(i)]) idx.push_back(i);
        z = Eigen::VectorXd::Zero(m);
        if (idx.empty()) return;
        const auto k = static_cast<Eigen::Index>(idx.size());
        Eigen::MatrixXd Gp(k, k);
        Eigen::VectorXd bp(k);
        for (Eigen::Index r = 0; r < k; ++r) {
            bp[r] = b[idx[static_cast<std::size_t>(r)]];
            for (Eigen::Index c = 0; c < k; ++c) Gp(r, c) = G(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
        }
        Eigen::LLT<Eigen::MatrixXd> llt(Gp);
        Eigen::VectorXd zp;
        if (llt.info() == Eigen::Success) zp = llt.solve(bp);
        else zp = Gp.completeOrthogonalDecomposition().solve(bp);
        for (Eigen::Index r = 0; r < k; ++r) z[idx[static_cast<std::size_t>(r)]] = zp[r];
    };
    // Restores optimality on the passive set, dropping indices that hit zero.
    auto settle = [&] {
        Eigen::VectorXd z;
        for (int guard = 0; guard <= m + 1; ++guard) {
            solve_passive(z);
            double alpha = 1.0;
            bool clean = true;
            for (Eigen::Index i = 0; i < m; ++i)
                if (passive[static_cast<std::size_t>(i)] && z[i] <= tol) {
                    clean = false;
                    const double denom = u[i] - z[i];
                    if (denom > 0) alpha = std::min(alpha, u[i] / denom);
                }
            if (clean) {
                u = z;
                return;
            }
            u += alpha * (z - u);
            for (Eigen::Index i = 0; i < m; ++i)
                if (passive[static_cast<std::size_t>(i)] && u[i] <= tol) {
                    passive[static_cast<std::size_t>(i)] = false;
                    u[i] = 0;
                }
        }
    };
    int changes = 0;
    settle();
    std::vector<bool> blocked(static_cast<std::size_t>(m), false);
    for (int iter = 0; iter < max_iter; ++iter) {
        const Eigen::VectorXd w = b - G * u;
        Eigen::Index best = -1;
        double best_w = tol;
        for (Eigen::Index i = 0; i < m; ++i)
            if (!passive[static_cast<std::size_t>(i)] && !blocked[static_cast<std::size_t>(i)] && w[i] > best_w) {
                best_w = w[i];
                best = i;
            }
        if (best < 0) return changes;
        const Eigen::VectorXd before = u;
        const auto before_passive = passive;
        passive[static_cast<std::size_t>(best)] = true;
        ++changes;
        settle();
        // An index that enters and is immediately dropped again would cycle.
        if (!passive[static_cast<std::size_t>(best)]) {
            blocked[static_cast<std::size_t>(best)] = true;
            u = before;
            passive = before_passive;
        } else {
            std::fill(blocked.begin(), blocked.end(), false);
        }
    }
    fail(ErrorKind::IterationLimit, "NNLS did not converge");
}

} // namespace subdiv
