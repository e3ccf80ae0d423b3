#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "skinrecon/error.hpp"
#include "skinrecon/nnls.hpp"

using namespace skinrecon;

namespace {

Eigen::MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
    std::normal_distribution<double> n;
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
    return m;
}

}  // namespace

TEST(Nnls, IdentityClampsNegatives) {
    Eigen::VectorXd d(4);
    d << 1.0, -2.0, 0.5, -0.1;
    const auto r = nnls_solve(Eigen::MatrixXd::Identity(4, 4), d);
    EXPECT_TRUE(r.converged);
    Eigen::VectorXd ref(4);
    ref << 1.0, 0.0, 0.5, 0.0;
    EXPECT_LE((r.x - ref).norm(), 1e-15);
    EXPECT_NEAR(r.residual, std::sqrt(4.0 + 0.01), 1e-14);
}

TEST(Nnls, MatchesUnconstrainedWhenInterior) {
    std::mt19937_64 rng(1);
    const Eigen::MatrixXd C = random_matrix(rng, 12, 6);
    Eigen::VectorXd x(6);
    x << 1, 2, 3, 0.5, 4, 1.5;
    const auto r = nnls_solve(C, C * x);
    EXPECT_LE((r.x - x).norm(), 1e-10 * x.norm());
    EXPECT_LE(r.residual, 1e-10);
}

TEST(Nnls, ZeroData) {
    std::mt19937_64 rng(2);
    const auto r = nnls_solve(random_matrix(rng, 5, 3), Eigen::VectorXd::Zero(5));
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.x, Eigen::VectorXd::Zero(3));
}

TEST(Nnls, MatchesBruteForce) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> cols(1, 8);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index n = cols(rng), m = n + trial % 5;
        const Eigen::MatrixXd C = random_matrix(rng, m, n);
        const Eigen::VectorXd d = random_matrix(rng, m, 1);
        const auto r = nnls_solve(C, d);
        const Eigen::VectorXd ref = oracle::nnls_brute_force(C, d);
        ASSERT_TRUE(r.converged);
        EXPECT_GE(r.x.minCoeff(), 0.0);
        EXPECT_LE((r.x - ref).norm(), 1e-9 * std::max(1.0, ref.norm())) << trial;
        EXPECT_NEAR(r.residual, (C * r.x - d).norm(), 1e-12);
    }
}

TEST(Nnls, KktConditionsHold) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::MatrixXd C = random_matrix(rng, 40, 25);
        const Eigen::VectorXd d = random_matrix(rng, 40, 1);
        const auto r = nnls_solve(C, d);
        const Eigen::VectorXd g = C.transpose() * (C * r.x - d);
        const double tol = 1e-9 * (C.transpose() * d).cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < 25; ++i) {
            EXPECT_GE(r.x(i), 0.0);
            if (r.x(i) > 0.0)
                EXPECT_LE(std::abs(g(i)), tol);
            else
                EXPECT_GE(g(i), -tol);
        }
    }
}

TEST(Nnls, NoWorseThanClampedUnconstrained) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::MatrixXd C = random_matrix(rng, 30, 20);
        const Eigen::VectorXd d = random_matrix(rng, 30, 1);
        const Eigen::VectorXd ls = C.colPivHouseholderQr().solve(d);
        const double clamped = (C * ls.cwiseMax(0.0) - d).norm();
        EXPECT_LE(nnls_solve(C, d).residual, clamped + 1e-12);
    }
}

TEST(Nnls, NonConvergenceCarriesBestIterate) {
    std::mt19937_64 rng(6);
    const Eigen::MatrixXd C = random_matrix(rng, 40, 30);
    const Eigen::VectorXd d = random_matrix(rng, 40, 1);
    NnlsOptions o;
    o.max_iterations = 1;
    try {
        const auto r = nnls_solve(C, d, o);
        // Solved in a single exchange: nothing to check.
        EXPECT_TRUE(r.converged);
    } catch (const NnlsNonConvergence& e) {
        EXPECT_EQ(e.category(), ErrorCategory::non_convergence);
        EXPECT_FALSE(e.best().converged);
        EXPECT_EQ(e.best().x.size(), 30);
        EXPECT_GE(e.best().x.minCoeff(), 0.0);
        EXPECT_NEAR(e.best().residual, (C * e.best().x - d).norm(), 1e-12);
    }
}

TEST(Nnls, RejectsBadInput) {
    EXPECT_THROW(nnls_solve(Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(2)), Error);
    NnlsOptions o;
    o.max_iterations = 0;
    EXPECT_THROW(nnls_solve(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2), o), Error);
    Eigen::MatrixXd C = Eigen::MatrixXd::Identity(2, 2);
    C(0, 1) = std::numeric_limits<double>::infinity();
    EXPECT_THROW(nnls_solve(C, Eigen::VectorXd::Ones(2)), Error);
}
