#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "subdiv/error.hpp"

namespace subdiv {

struct QpSolution {
    Eigen::VectorXd x;
    std::vector<int> active;      // constraint rows with positive multiplier
    Eigen::VectorXd multipliers;  // per constraint row, zero when inactive
    int iterations = 0;
};

// Primal active-set method for  min 1/2 |x|^2  s.t.  A x >= 1, starting from
// the feasible point x = t*1 (t large enough). Kept separate from the NNLS
// path so the two can check each other.
inline QpSolution min_norm_covering(const Eigen::MatrixXd& A, double tol = 1e-11, int max_iter = 100000) {
    const auto m = A.rows(), n = A.cols();
    QpSolution out;
    double start = 1.0;
    for (Eigen::Index r = 0; r < m; ++r) {
        const double s = A.row(r).sum();
        if (s <= 0) fail(ErrorKind::NoPath, "empty constraint row");
        start = std::max(start, 1.0 / s);
    }
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, start);
    std::vector<int> work;
    std::vector<bool> in_work(static_cast<std::size_t>(m), false);

    auto eqp = [&](Eigen::VectorXd& y, Eigen::VectorXd& lambda) {
        // min 1/2|y|^2 s.t. A_W y = 1  ->  y = A_W' lambda, (A_W A_W') lambda = 1
        const auto k = static_cast<Eigen::Index>(work.size());
        if (k == 0) {
            y = Eigen::VectorXd::Zero(n);
            lambda.resize(0);
            return;
        }
        Eigen::MatrixXd Aw(k, n);
        for (Eigen::Index i = 0; i < k; ++i) Aw.row(i) = A.row(work[static_cast<std::size_t>(i)]);
        const Eigen::MatrixXd M = Aw * Aw.transpose();
        lambda = M.ldlt().solve(Eigen::VectorXd::Ones(k));
        y = Aw.transpose() * lambda;
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        out.iterations = iter + 1;
        Eigen::VectorXd y, lambda;
        eqp(y, lambda);
        const Eigen::VectorXd p = y - x;
        if (p.norm() <= tol * (1.0 + x.norm())) {
            Eigen::Index worst = -1;
            double worst_val = -tol;
            for (Eigen::Index i = 0; i < lambda.size(); ++i)
                if (lambda[i] < worst_val) {
                    worst_val = lambda[i];
                    worst = i;
                }
            if (worst < 0) {
                out.x = y;
                out.multipliers = Eigen::VectorXd::Zero(m);
                for (Eigen::Index i = 0; i < lambda.size(); ++i) {
                    out.multipliers[work[static_cast<std::size_t>(i)]] = lambda[i];
                    if (lambda[i] > tol) out.active.push_back(work[static_cast<std::size_t>(i)]);
                }
                return out;
            }
            in_work[static_cast<std::size_t>(work[static_cast<std::size_t>(worst)])] = false;
            work.erase(work.begin() + worst);
            x = y;
            continue;
        }
        double alpha = 1.0;
        int blocking = -1;
        for (Eigen::Index r = 0; r < m; ++r) {
            if (in_work[static_cast<std::size_t>(r)]) continue;
            const double ap = A.row(r).dot(p);
            if (ap < -1e-14) {
                const double step = (1.0 - A.row(r).dot(x)) / ap;
                if (step < alpha) {
                    alpha = std::max(step, 0.0);
                    blocking = static_cast<int>(r);
                }
            }
        }
        x += alpha * p;
        if (blocking >= 0) {
            work.push_back(blocking);
            in_work[static_cast<std::size_t>(blocking)] = true;
        }
    }
    fail(ErrorKind::IterationLimit, "active-set QP did not converge");
}

} // namespace subdiv
