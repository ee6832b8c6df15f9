#include <gtest/gtest.h>

#include <random>

#include "alfeld/linear_solver.hpp"

using namespace alfeld;

namespace {

SparseSystem from_dense(const Eigen::MatrixXd& a) {
    SparseSystem s;
    s.dim = static_cast<int>(a.rows());
    s.matrix = a.sparseView();
    s.matrix.makeCompressed();
    return s;
}

}  // namespace

TEST(Solve, Identity) {
    const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(5, -1.0, 3.0);
    SolveInfo info;
    const Eigen::VectorXd x = solve(from_dense(Eigen::MatrixXd::Identity(5, 5)), b, &info);
    EXPECT_EQ(x, b);
    EXPECT_EQ(info.residual, 0.0);
}

TEST(Solve, SpdResidualAndReference) {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> N(0.0, 1.0);
    Eigen::MatrixXd g(40, 40);
    for (int i = 0; i < g.size(); ++i) g.data()[i] = N(rng);
    const Eigen::MatrixXd a = g.transpose() * g + Eigen::MatrixXd::Identity(40, 40);
    Eigen::VectorXd b(40);
    for (auto& v : b) v = N(rng);
    SolveInfo info;
    const Eigen::VectorXd x = solve(from_dense(a), b, &info);
    EXPECT_LE(info.residual, kSolverTolerance);
    EXPECT_LE((a * x - b).norm() / b.norm(), 1e-12);
    EXPECT_LE((x - a.llt().solve(b)).norm(), 1e-10 * x.norm());
    EXPECT_GT(info.rcond, 0.0);
}

TEST(Solve, SaddlePoint) {
    // [[I, B^T], [B, 0]] with B of full row rank.
    Eigen::MatrixXd B(2, 4);
    B << 1, 0, 1, 0, 0, 1, 0, -1;
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(6, 6);
    k.topLeftCorner(4, 4).setIdentity();
    k.topRightCorner(4, 2) = B.transpose();
    k.bottomLeftCorner(2, 4) = B;
    Eigen::VectorXd rhs(6);
    rhs << 1, 2, 3, 4, 5, 6;
    const Eigen::VectorXd x = solve(from_dense(k), rhs);
    EXPECT_LE((x - k.fullPivLu().solve(rhs)).norm(), 1e-13);
}

TEST(Solve, SingularReportsPivot) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 4);
    a(2, 2) = 0.0;
    try {
        solve(from_dense(a), Eigen::VectorXd::Ones(4));
        FAIL() << "expected SingularMatrixError";
    } catch (const SingularMatrixError& e) {
        EXPECT_EQ(e.pivot_dof(), 2);
    }
}

TEST(Solve, RejectsShapeMismatch) {
    EXPECT_THROW(solve(from_dense(Eigen::MatrixXd::Identity(3, 3)), Eigen::VectorXd::Ones(2)), InvalidArgument);
    EXPECT_EQ(solve(from_dense(Eigen::MatrixXd(0, 0)), Eigen::VectorXd()).size(), 0);
}
