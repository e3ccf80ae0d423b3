#include "skinrecon/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "skinrecon/influence.hpp"

namespace skinrecon {

namespace {

// Least-squares solution restricted to the free columns; the rest are zero.
Eigen::VectorXd solve_free(const Eigen::MatrixXd& C, const Eigen::VectorXd& d, const std::vector<bool>& free) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < C.cols(); ++i)
        if (free[std::size_t(i)]) idx.push_back(i);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(C.cols());
    if (idx.empty()) return x;
    Eigen::MatrixXd Cf(C.rows(), Eigen::Index(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) Cf.col(Eigen::Index(j)) = C.col(idx[j]);
    note_factorization();
    const Eigen::VectorXd xf = Cf.completeOrthogonalDecomposition().solve(d);
    for (std::size_t j = 0; j < idx.size(); ++j) x(idx[j]) = xf(Eigen::Index(j));
    return x;
}

}  // namespace

void NnlsOptions::validate() const {
    require(max_iterations > 0, "max_iterations must be positive");
    require(kkt_tolerance > 0.0, "kkt_tolerance must be positive");
    require(backup_rule_trigger > 0, "backup_rule_trigger must be positive");
}

NnlsResult nnls_solve(const Eigen::MatrixXd& C, const Eigen::VectorXd& d, const NnlsOptions& opts) {
    opts.validate();
    if (C.rows() != d.size())
        fail(ErrorCategory::invalid_argument, "matrix has " + std::to_string(C.rows()) + " rows, right-hand side " +
                                                  std::to_string(d.size()) + " entries");
    require(C.cols() > 0, "matrix has no columns");
    if (!C.allFinite() || !d.allFinite()) fail(ErrorCategory::invalid_argument, "non-finite input to nnls");

    const Eigen::Index n = C.cols();
    const Eigen::VectorXd Ctd = C.transpose() * d;
    const double gtol = opts.kkt_tolerance * std::max(Ctd.lpNorm<Eigen::Infinity>(), 1e-300);

    std::vector<bool> free(std::size_t(n), false);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd y = -Ctd;  // gradient C^T (C x - d)

    NnlsResult best;
    best.x = x;
    best.residual = d.norm();

    Eigen::Index best_infeasible = n + 1;
    int budget = opts.backup_rule_trigger;

    for (int it = 1; it <= opts.max_iterations; ++it) {
        const double xtol = 1e-14 * std::max(1.0, x.lpNorm<Eigen::Infinity>());
        std::vector<Eigen::Index> bad;
        for (Eigen::Index i = 0; i < n; ++i) {
            const bool f = free[std::size_t(i)];
            if ((f && x(i) < -xtol) || (!f && y(i) < -gtol)) bad.push_back(i);
        }
        if (bad.empty()) {
            NnlsResult r;
            r.x = x.cwiseMax(0.0);
            r.residual = (C * r.x - d).norm();
            r.iterations = it - 1;
            r.converged = true;
            return r;
        }

        const auto count = Eigen::Index(bad.size());
        if (count < best_infeasible) {
            best_infeasible = count;
            budget = opts.backup_rule_trigger;
            for (auto i : bad) free[std::size_t(i)] = !free[std::size_t(i)];
        } else if (budget > 0) {
            --budget;
            for (auto i : bad) free[std::size_t(i)] = !free[std::size_t(i)];
        } else {
            const auto i = bad.back();
            free[std::size_t(i)] = !free[std::size_t(i)];
        }

        x = solve_free(C, d, free);
        const Eigen::VectorXd r = C * x - d;
        y = C.transpose() * r;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (free[std::size_t(i)]) y(i) = 0.0;
        }

        const Eigen::VectorXd clamped = x.cwiseMax(0.0);
        const double res = (C * clamped - d).norm();
        if (res < best.residual) {
            best.x = clamped;
            best.residual = res;
        }
        best.iterations = it;
    }
    throw NnlsNonConvergence("nnls did not converge in " + std::to_string(opts.max_iterations) + " iterations",
                             best);
}

}  // namespace skinrecon
