#include <gtest/gtest.h>

#include <random>

#include "alfeld/error.hpp"
#include "alfeld/tensor_calculus.hpp"

using namespace alfeld;

namespace {

PolyField monomial(int ndim, ValueShape shape, const Exponent& e, int component, double c = 1.0) {
    PolyField p(ndim, shape);
    p.add_to(e, component, c);
    return p;
}

}  // namespace

TEST(MatrixParts, IdentityAndSkew) {
    const auto p = matrix_parts(Eigen::MatrixXd::Identity(3, 3));
    EXPECT_TRUE(p.sym.isApprox(Eigen::MatrixXd::Identity(3, 3)));
    EXPECT_EQ(p.skw.norm(), 0.0);
    EXPECT_EQ(p.dev.norm(), 0.0);
    EXPECT_EQ(p.tr, 3.0);

    const auto q = matrix_parts(Eigen::MatrixXd(mskw(Eigen::Vector3d(1, 2, 3))));
    EXPECT_EQ(q.sym.norm(), 0.0);
    EXPECT_EQ(q.tr, 0.0);
}

TEST(MatrixParts, RandomDevIsTraceFreeAndPartsAdd) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int t = 0; t < 20; ++t) {
        Eigen::MatrixXd m(3, 3);
        for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = U(rng);
        const auto p = matrix_parts(m);
        EXPECT_NEAR(p.dev.trace(), 0.0, 1e-14);
        EXPECT_LE((p.sym + p.skw - m).norm(), 1e-15);
    }
    EXPECT_THROW(matrix_parts(Eigen::MatrixXd::Zero(2, 3)), InvalidArgument);
}

TEST(Xi, HandExamplesAndRoundTrip) {
    EXPECT_TRUE(xi(Eigen::Matrix3d(Eigen::Matrix3d::Identity())).isApprox(-2.0 * Eigen::Matrix3d::Identity()));
    const Eigen::Matrix3d s = mskw(Eigen::Vector3d(0.3, -1.0, 2.0));
    EXPECT_LE((xi(s) + s).norm(), 1e-15);  // transpose of a skew matrix, zero trace

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int t = 0; t < 100; ++t) {
        Eigen::Matrix3d m;
        for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = U(rng);
        EXPECT_LE((xi_inv(xi(m)) - m).norm(), 1e-14);
    }
    EXPECT_THROW(xi(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2))), InvalidArgument);
}

TEST(Mskw, DisplayedPatternAndRoundTrip) {
    const Eigen::Matrix3d m = mskw(Eigen::Vector3d(1, 0, 0));
    Eigen::Matrix3d expected;
    expected << 0, 0, 0, 0, 0, -1, 0, 1, 0;
    EXPECT_EQ(m, expected);
    EXPECT_EQ(vskw(Eigen::Matrix3d(Eigen::Matrix3d::Identity() * 2.0 + Eigen::Matrix3d::Ones())).norm(), 0.0);
    // vskw M = (m32 - m23, m13 - m31, m21 - m12) / 2
    Eigen::Matrix3d a;
    a << 1, 2, 3, 4, 5, 6, 7, 8, 9;
    EXPECT_TRUE(vskw(a).isApprox(Eigen::Vector3d((8 - 6) / 2.0, (3 - 7) / 2.0, (4 - 2) / 2.0)));
    const Eigen::Vector3d v(0.1, -0.7, 2.5);
    EXPECT_EQ(vskw(mskw(v)), v);
    // mskw(v) w = v x w
    const Eigen::Vector3d w(1, 2, 3);
    EXPECT_LE((mskw(v) * w - v.cross(w)).norm(), 1e-15);
}

TEST(Theta, ZeroAndSingleComponent) {
    Tensor3 z(3);
    for (double x : theta(z).data) EXPECT_EQ(x, 0.0);

    // a_{012} = 1, a_{021} = -1: (Theta a)_ijk = a_ijk - a_jik.
    Tensor3 a(3);
    a(0, 1, 2) = 1;
    a(0, 2, 1) = -1;
    const Tensor3 b = theta(a);
    Tensor3 expected(3);
    expected(0, 1, 2) = 1;
    expected(1, 0, 2) = -1;
    expected(0, 2, 1) = -1;
    expected(2, 0, 1) = 1;
    EXPECT_EQ(b.data, expected.data);

    Tensor3 bad(3);
    bad(0, 1, 2) = 1;
    EXPECT_THROW(theta(bad), InvalidArgument);
}

TEST(Theta, RoundTripRandom) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int n : {2, 3, 4})
        for (int t = 0; t < 100; ++t) {
            Tensor3 a(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = j + 1; k < n; ++k) {
                        a(i, j, k) = U(rng);
                        a(i, k, j) = -a(i, j, k);
                    }
            const Tensor3 b = theta(a);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) EXPECT_EQ(b(i, j, k), -b(j, i, k));
            const Tensor3 r = theta_inv(b);
            for (std::size_t q = 0; q < a.data.size(); ++q) EXPECT_NEAR(r.data[q], a.data[q], 1e-13);
        }
}

TEST(MatrixOpsTable, SkewBasis) {
    for (int n : {2, 3, 4}) {
        const MatrixOpsTable t(n);
        EXPECT_EQ(t.dim_skew(), n * (n - 1) / 2);
        for (const auto& e : t.skew_basis) EXPECT_EQ((e + e.transpose()).norm(), 0.0);
    }
}

TEST(PolyField, DerivativeLowersDegree) {
    std::mt19937_64 rng(4);
    const PolyField p = PolyField::random(3, ValueShape::scalar, 3, rng);
    EXPECT_EQ(p.degree(), 3);
    EXPECT_EQ(p.derivative(1).degree(), 2);
    const double one[] = {1.0};
    EXPECT_TRUE(PolyField::constant(3, ValueShape::scalar, one).derivative(0).is_zero());
    PolyField q = p;
    EXPECT_THROW(q.add_term({1, 0}, one), InvalidArgument);
}

TEST(PolyField, EvaluateMatchesHandExpansion) {
    // 2 x0^2 x1 - x2 + 0.5
    PolyField p(3, ValueShape::scalar);
    p.add_to({2, 1, 0}, 0, 2.0);
    p.add_to({0, 0, 1}, 0, -1.0);
    p.add_to({0, 0, 0}, 0, 0.5);
    const double x[] = {0.3, -1.2, 0.7};
    EXPECT_NEAR(p.evaluate(x)[0], 2 * 0.09 * -1.2 - 0.7 + 0.5, 1e-15);
}

TEST(FieldCalculus, GradDivCurlExamples) {
    // grad(x0 x1) = (x1, x0) in N = 2
    const PolyField g = grad(monomial(2, ValueShape::scalar, {1, 1}, 0));
    const double x[] = {0.4, -0.9};
    const auto v = g.evaluate(x);
    EXPECT_DOUBLE_EQ(v[0], -0.9);
    EXPECT_DOUBLE_EQ(v[1], 0.4);

    const double c[] = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    EXPECT_TRUE(div(PolyField::constant(3, ValueShape::matrix, c)).is_zero());

    // curl(0, 0, x0) = (0, -1, 0)
    const auto cu = curl(monomial(3, ValueShape::vector, {1, 0, 0}, 2)).evaluate(std::vector<double>{0.1, 0.2, 0.3});
    EXPECT_EQ(cu, (std::vector<double>{0, -1, 0}));
    EXPECT_THROW(curl(PolyField(2, ValueShape::vector)), InvalidArgument);
    EXPECT_THROW(div(PolyField(3, ValueShape::scalar)), InvalidArgument);
}

TEST(DdOperator, ConstantAndLinearExample) {
    std::mt19937_64 rng(5);
    EXPECT_TRUE(dd_operator(random_skew_field(3, 0, rng)).is_zero());
    // eta_{01} = x1 stored as H = [[0, x1], [-x1, 0]]: d(H)_i = d_j H_ij = (1, 0).
    PolyField h(2, ValueShape::matrix);
    h.add_to({0, 1}, 1, 1.0);
    h.add_to({0, 1}, 2, -1.0);
    const auto d = dd_operator(h).evaluate(std::vector<double>{0.5, 0.5});
    EXPECT_EQ(d, (std::vector<double>{1.0, 0.0}));
    EXPECT_THROW(dd_operator(PolyField(3, ValueShape::vector)), InvalidArgument);
}

TEST(Identities, DivXiEqualsTwiceVskwCurl) {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 200; ++t) {
        const PolyField u = PolyField::random(3, ValueShape::matrix, 3, rng);
        EXPECT_LE((div(xi(u)) - vskw(curl(u)) * 2.0).max_abs_coeff(), 1e-12);
    }
}

TEST(Identities, DivOfDVanishesAndDivTheta) {
    std::mt19937_64 rng(7);
    for (int n : {2, 3, 4})
        for (int t = 0; t < 50; ++t) {
            EXPECT_LE(div(dd_operator(random_skew_field(n, 3, rng))).max_abs_coeff(), 1e-12);
            const PolyField w = random_vk_field(n, 3, rng);
            EXPECT_LE(div(dd_operator(w)).max_abs_coeff(), 1e-12);
            EXPECT_LE((div(theta(w)) - skw(dd_operator(w)) * 2.0).max_abs_coeff(), 1e-12);
            EXPECT_LE((theta_inv(theta(w)) - w).max_abs_coeff(), 1e-13);
        }
}

TEST(Identities, TraceLemmaOnHyperplane) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(-1, 1);
    // Gamma = {x0 + x1 + x2 = 0.3}; eta = (n.x - c) rho vanishes there.
    const double s = 1.0 / std::sqrt(3.0);
    const std::vector<double> n{s, s, s};
    const PolyField eta = random_skew_field(3, 2, rng).times(PolyField::affine(-0.3 * s, n));
    const PolyField d = dd_operator(eta);
    for (int p = 0; p < 20; ++p) {
        std::vector<double> x{U(rng), U(rng), 0.0};
        x[2] = 0.3 - x[0] - x[1];
        const auto v = d.evaluate(x);
        EXPECT_NEAR(s * (v[0] + v[1] + v[2]), 0.0, 1e-10);
    }
}
