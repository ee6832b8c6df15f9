#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "alfeld/error.hpp"
#include "alfeld/materials.hpp"

using namespace alfeld;

namespace {

Mat3 random_sym(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1, 1);
    Mat3 m;
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = U(rng);
    return 0.5 * (m + m.transpose());
}

Mat6 isotropic_voigt(double lambda, double mu) {
    Mat6 c = Mat6::Zero();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) c(i, j) = lambda;
        c(i, i) += 2.0 * mu;
        c(i + 3, i + 3) = mu;
    }
    return c;
}

/// Central-difference div of sigma at x, component by component.
Vec3 fd_div(const MatrixField& s, const Vec3& x, double h) {
    Vec3 d = Vec3::Zero();
    for (int j = 0; j < 3; ++j) {
        Vec3 e = Vec3::Zero();
        e(j) = h;
        d += (s(x + e).col(j) - s(x - e).col(j)) / (2.0 * h);
    }
    return d;
}

}  // namespace

TEST(Compliance, IdentityAndTraceFree) {
    const double lambda = 1.7, mu = 0.6;
    const auto a = ComplianceTensor::isotropic(lambda, mu);
    EXPECT_LE((a.apply(Mat3::Identity()) - Mat3::Identity() / (2 * mu + 3 * lambda)).norm(), 1e-15);
    Mat3 m;
    m << 1, 2, 0, 2, -3, 1, 0, 1, 2;  // trace-free
    EXPECT_LE((a.apply(m) - m / (2 * mu)).norm(), 1e-15);
    // skew matrices are annihilated
    Mat3 k;
    k << 0, 1, 2, -1, 0, 3, -2, -3, 0;
    EXPECT_LE((a.matrix9() * Eigen::Map<const Eigen::Matrix<double, 9, 1>>(k.data())).norm(), 1e-15);
}

TEST(Compliance, StiffnessInvertsAndCoercivity) {
    std::mt19937_64 rng(11);
    const auto a = ComplianceTensor::isotropic(2.0, 0.5);
    for (int t = 0; t < 20; ++t) {
        const Mat3 s = random_sym(rng);
        EXPECT_LE((a.stiffness(a.apply(s)) - s).norm(), 1e-13);
    }
    // eigenvalues of A on symmetric matrices: 1/(2mu) (deviatoric), 1/(2mu+3lambda) (spherical)
    EXPECT_NEAR(a.coercivity(), 1.0 / 7.0, 1e-14);
    EXPECT_NEAR(a.deviatoric_coercivity(), 1.0, 1e-14);
    // extended9 is positive definite with the skew block equal to alpha
    const Eigen::SelfAdjointEigenSolver<Mat9> es(a.extended9(0.25));
    EXPECT_NEAR(es.eigenvalues().minCoeff(), 1.0 / 7.0, 1e-13);
    EXPECT_NEAR((es.eigenvalues().array() - 0.25).abs().minCoeff(), 0.0, 1e-13);
}

TEST(Compliance, VoigtMatchesIsotropic) {
    std::mt19937_64 rng(12);
    const double lambda = 1.3, mu = 0.8;
    const auto iso = ComplianceTensor::isotropic(lambda, mu);
    const auto gen = ComplianceTensor::from_voigt_stiffness(isotropic_voigt(lambda, mu));
    EXPECT_EQ(gen.kind(), ComplianceTensor::Kind::general);
    for (int t = 0; t < 20; ++t) {
        const Mat3 s = random_sym(rng);
        EXPECT_LE((gen.apply(s) - iso.apply(s)).norm(), 1e-13);
        EXPECT_LE((gen.stiffness(s) - iso.stiffness(s)).norm(), 1e-13);
    }
}

TEST(Compliance, VoigtShearConvention) {
    // Pure shear strain eps_12 = eps_21 = g/2 (engineering g): sigma_12 = C66 g.
    Mat6 c = isotropic_voigt(1.0, 1.0);
    c(5, 5) = 3.0;
    const auto a = ComplianceTensor::from_voigt_stiffness(c);
    Mat3 e = Mat3::Zero();
    e(0, 1) = e(1, 0) = 0.5;
    const Mat3 s = a.stiffness(e);
    EXPECT_NEAR(s(0, 1), 3.0, 1e-14);
    EXPECT_NEAR(s(1, 0), 3.0, 1e-14);
    EXPECT_NEAR(s(0, 0), 0.0, 1e-14);
}

TEST(Compliance, RejectsBadInput) {
    EXPECT_THROW(ComplianceTensor::isotropic(1.0, 0.0), InvalidArgument);
    EXPECT_THROW(ComplianceTensor::isotropic(-1.0, 0.5), InvalidArgument);
    Mat6 c = isotropic_voigt(1.0, 1.0);
    c(0, 1) += 0.5;
    EXPECT_THROW(ComplianceTensor::from_voigt_stiffness(c), InvalidArgument);
    EXPECT_THROW(ComplianceTensor::from_voigt_stiffness(-Mat6::Identity()), InvalidArgument);
}

TEST(LameConversion, RoundTripAndKnownValues) {
    const auto l = lame_from_young(1.0, 0.3);
    EXPECT_NEAR(l.mu, 1.0 / 2.6, 1e-15);
    EXPECT_NEAR(l.lambda, 0.3 / (1.3 * 0.4), 1e-15);
    for (double nu : {-0.5, 0.0, 0.25, 0.4999}) {
        const auto lp = lame_from_young(2.5, nu);
        const auto [e, n] = young_from_lame(lp.lambda, lp.mu);
        EXPECT_NEAR(e, 2.5, 1e-11);
        EXPECT_NEAR(n, nu, 1e-12);
    }
    EXPECT_THROW(lame_from_young(1.0, 0.5), InvalidArgument);
    EXPECT_THROW(lame_from_young(-1.0, 0.3), InvalidArgument);
}

TEST(ParseMaterial, Forms) {
    const auto a = parse_material("iso:E=1,nu=0.3");
    const auto l = lame_from_young(1.0, 0.3);
    EXPECT_NEAR(a.lambda(), l.lambda, 1e-15);
    EXPECT_NEAR(a.mu(), l.mu, 1e-15);
    const auto b = parse_material("iso:lambda=2,mu=0.5");
    EXPECT_EQ(b.lambda(), 2.0);
    EXPECT_EQ(b.mu(), 0.5);

    const std::string path = ::testing::TempDir() + "voigt_iso.txt";
    {
        std::ofstream f(path);
        f << isotropic_voigt(1.3, 0.8);
    }
    const auto c = parse_material("voigt:" + path);
    EXPECT_LE((c.apply(Mat3::Identity()) - ComplianceTensor::isotropic(1.3, 0.8).apply(Mat3::Identity())).norm(),
              1e-14);
}

TEST(ParseMaterial, Errors) {
    for (const char* bad : {"iso:E=1", "iso:E=x,nu=0.3", "iso:E=1,nu=0.6", "steel", "iso:E=1,nu=0.3,k=2",
                            "aniso:E=1,nu=0.3", "voigt:/nonexistent/file"})
        EXPECT_THROW(parse_material(bad), InvalidArgument) << bad;
}

TEST(Manufactured, TrigValuesAndBoundary) {
    const auto a = parse_material("iso:E=1,nu=0.3");
    const auto mc = manufactured_case(a, "trig");
    EXPECT_TRUE(mc.zero_boundary);
    EXPECT_LE((mc.u(Vec3(0.5, 0.5, 0.5)) - Vec3(0.1, 0.2, 0.3)).norm(), 1e-15);
    EXPECT_LE(mc.grad_u(Vec3(0.5, 0.5, 0.5)).norm(), 1e-15);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> U(0, 1);
    for (int t = 0; t < 20; ++t) {
        Vec3 x(U(rng), U(rng), U(rng));
        x(t % 3) = (t / 3) % 2;
        EXPECT_LE(mc.u(x).norm(), 1e-15);
    }
}

TEST(Manufactured, ConstitutiveAndEquilibriumByFiniteDifferences) {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> U(0.1, 0.9);
    const ComplianceTensor mats[] = {parse_material("iso:E=1,nu=0.3"),
                                     ComplianceTensor::from_voigt_stiffness([] {
                                         Mat6 c = isotropic_voigt(1.0, 1.0);
                                         c(0, 0) = 4.0;
                                         c(3, 3) = 1.5;
                                         return c;
                                     }())};
    for (const auto& a : mats)
        for (const char* id : {"trig", "divfree", "linear"}) {
            const auto mc = manufactured_case(a, id);
            for (int t = 0; t < 5; ++t) {
                const Vec3 x(U(rng), U(rng), U(rng));
                // grad u by central differences
                Mat3 g;
                const double h = 1e-5;
                for (int j = 0; j < 3; ++j) {
                    Vec3 e = Vec3::Zero();
                    e(j) = h;
                    g.col(j) = (mc.u(x + e) - mc.u(x - e)) / (2 * h);
                }
                EXPECT_LE((g - mc.grad_u(x)).norm(), 1e-8) << id;
                const Mat3 eps = 0.5 * (g + g.transpose());
                EXPECT_LE((a.apply(mc.sigma(x)) - eps).norm(), 1e-8) << id;
                EXPECT_LE((mc.sigma(x) - mc.sigma(x).transpose()).norm(), 1e-14) << id;
                EXPECT_LE((fd_div(mc.sigma, x, 1e-4) - mc.f(x)).norm(), 1e-6 * (1.0 + mc.f(x).norm())) << id;
            }
        }
    EXPECT_FALSE(manufactured_case(mats[0], "linear").zero_boundary);
    EXPECT_THROW(manufactured_case(mats[0], "cubic"), InvalidArgument);
}

TEST(Manufactured, DivfreeIndependentOfLambda) {
    const Vec3 x(0.3, 0.6, 0.2);
    const auto a = manufactured_case(ComplianceTensor::isotropic(1.0, 1.0), "divfree");
    const auto b = manufactured_case(ComplianceTensor::isotropic(1e6, 1.0), "divfree");
    EXPECT_NEAR(a.grad_u(x).trace(), 0.0, 1e-14);
    EXPECT_LE((a.sigma(x) - b.sigma(x)).norm(), 1e-8);
}
