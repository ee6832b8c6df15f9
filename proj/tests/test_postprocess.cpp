#include <gtest/gtest.h>

#include "alfeld/postprocess.hpp"
#include "alfeld/quadrature.hpp"

using namespace alfeld;

namespace {

MethodConfig method(MethodId id) {
    MethodConfig m;
    m.id = id;
    return m;
}

}  // namespace

TEST(Postprocess, RecoversQuadraticDisplacement) {
    const auto mat = parse_material("iso:E=1,nu=0.3");
    const VectorField u = [](const Vec3& x) { return Vec3(x(0) * x(1), x(1) * x(2) + x(0) * x(0), x(2) * x(0)); };
    const auto sigma = [&](const Vec3& x) {
        Mat3 g;
        g << x(1), x(0), 0, 2 * x(0), x(2), x(1), x(2), 0, x(0);
        return mat.stiffness(0.5 * (g + g.transpose()));
    };
    // sigma is linear, so div sigma is constant
    Vec3 f = Vec3::Zero();
    for (int j = 0; j < 3; ++j) f += (sigma(Vec3::Unit(j)) - sigma(Vec3::Zero())).col(j);
    const auto mesh = std::make_shared<const SplitMesh>(generate_cube_mesh(1));
    const auto sol = run_method(mesh, method(MethodId::jkm), mat, load_from([&](const Vec3&) { return f; }), &u);
    const PostprocessedField p = postprocess_displacement(sol);
    EXPECT_LE(p.max_residual, 1e-10);
    for (int c = 0; c < mesh->num_cells(); ++c) {
        const auto& g = sol.disc->geometry[static_cast<std::size_t>(c)];
        for (const Vec3& x : {g.z, g.p[0], Vec3(0.5 * (g.p[1] + g.p[2]))})
            EXPECT_LE((p.value(c, x) - u(x)).norm(), 1e-11);
    }
}

TEST(Postprocess, SystemAndRigidMoments) {
    const auto mat = parse_material("iso:E=1,nu=0.3");
    const auto mc = manufactured_case(mat, "trig");
    const auto mesh = std::make_shared<const SplitMesh>(generate_cube_mesh(2));
    const auto sol = run_method(mesh, method(MethodId::jkm), mat, load_from(mc.f));
    const PostprocessedField p = postprocess_displacement(sol);
    const int cell = 5;
    const PostprocessSystem sys = postprocess_system(sol, cell);
    ASSERT_EQ(sys.matrix.rows(), 30);
    ASSERT_EQ(sys.matrix.cols(), 30);
    EXPECT_LE((sys.matrix * p.coeffs[static_cast<std::size_t>(cell)] - sys.rhs).norm(), 1e-10 * std::max(1.0, sys.rhs.norm()));

    // subtet means: average of the vertex values of the P1 displacement on each subtet
    const Eigen::VectorXd m = subtet_means(sol, cell);
    const DisplacementField uh = sol.disp_field();
    for (int s = 0; s < 4; ++s) {
        const auto& vv = uh.v[static_cast<std::size_t>(mesh->complex.subcell(cell, s))];
        EXPECT_LE((m.segment<3>(s * 3) - 0.25 * (vv[0] + vv[1] + vv[2] + vv[3])).norm(), 1e-14);
    }

    // (u*, P r) = (P u_h, P r) for rigid r; with P r piecewise constant this is
    // sum_s |K_s| mean_s(u*) . r(x_s) = sum_s |K_s| m_s . r(x_s).
    const auto& g = sol.disc->geometry[static_cast<std::size_t>(cell)];
    const auto& rule = simplex_rule(3, 2);
    for (int k = 0; k < 6; ++k) {
        double lhs = 0.0, rhs = 0.0;
        for (int s = 0; s < 4; ++s) {
            Vec3 mean = Vec3::Zero();
            for (std::size_t q = 0; q < rule.size(); ++q) {
                Vec3 x = Vec3::Zero();
                for (int v = 0; v < 4; ++v) x += rule.points[q][static_cast<std::size_t>(v)] * g.sub_vertex[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
                mean += 6.0 * rule.weights[q] * p.value(cell, x);
            }
            const Vec3 r = rigid_field(g, k, g.sub_centroid[static_cast<std::size_t>(s)]);
            lhs += g.sub_volume[static_cast<std::size_t>(s)] * mean.dot(r);
            rhs += g.sub_volume[static_cast<std::size_t>(s)] * m.segment<3>(s * 3).dot(r);
        }
        EXPECT_NEAR(lhs, rhs, 1e-13);
    }
}
