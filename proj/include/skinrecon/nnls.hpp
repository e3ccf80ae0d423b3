#pragma once

// Non-negative least squares, min ||C x - d|| subject to x >= 0, by block
// principal pivoting with a single-pivot backup rule for finite termination.

#include <Eigen/Dense>

#include "skinrecon/error.hpp"

namespace skinrecon {

struct NnlsOptions {
    int max_iterations = 500;
    /// Relative to ||C^T d||_inf.
    double kkt_tolerance = 1e-10;
    /// Block exchanges allowed without reducing the infeasible count before
    /// switching to single-index exchanges.
    int backup_rule_trigger = 3;

    void validate() const;
};

struct NnlsResult {
    Eigen::VectorXd x;
    double residual = 0.0;  ///< ||C x - d||
    int iterations = 0;
    bool converged = false;
};

/// Thrown when max_iterations is reached. Carries the best non-negative
/// iterate seen.
class NnlsNonConvergence : public Error {
public:
    NnlsNonConvergence(const std::string& what, NnlsResult best)
        : Error(ErrorCategory::non_convergence, what), best_(std::move(best)) {}
    const NnlsResult& best() const noexcept { return best_; }

private:
    NnlsResult best_;
};

NnlsResult nnls_solve(const Eigen::MatrixXd& C, const Eigen::VectorXd& d, const NnlsOptions& opts = {});

}  // namespace skinrecon
