#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "alfeld/error.hpp"
#include "alfeld/vtk.hpp"

using namespace alfeld;

namespace {

DiscreteSolution solve_cube(const VectorField& f) {
    MethodConfig m;
    const auto mesh = std::make_shared<const SplitMesh>(generate_cube_mesh(1));
    return run_method(mesh, m, parse_material("iso:E=1,nu=0.3"), load_from(f));
}

}  // namespace

TEST(Vtk, GridAndZeroSolution) {
    const auto sol = solve_cube([](const Vec3&) { return Vec3::Zero(); });
    std::stringstream ss;
    write_vtk(ss, sol);
    const VtkContents v = read_vtk(ss);
    EXPECT_EQ(v.num_points, 8 + 6);
    EXPECT_EQ(v.num_cells, 24);
    ASSERT_EQ(v.cell_types.size(), 24u);
    for (int t : v.cell_types) EXPECT_EQ(t, 10);
    ASSERT_EQ(v.cell_arrays.at("stress").size(), 24u * 6);
    ASSERT_EQ(v.cell_arrays.at("displacement").size(), 24u * 3);
    for (const auto& [name, a] : v.cell_arrays)
        for (double x : a) EXPECT_EQ(x, 0.0) << name;
}

TEST(Vtk, ArraysMatchSubtetAverages) {
    const auto sol = solve_cube([](const Vec3& x) { return Vec3(1.0 + x(1), -2.0, x(0) * x(2)); });
    std::stringstream ss;
    write_vtk(ss, sol);
    const VtkContents v = read_vtk(ss);
    const StressField s = sol.stress_field();
    const DisplacementField u = sol.disp_field();
    const auto& st = v.cell_arrays.at("stress");
    const auto& dp = v.cell_arrays.at("displacement");
    const int voigt[6][2] = {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};
    for (int c = 0; c < 24; ++c) {
        Mat3 m = Mat3::Zero();
        Vec3 w = Vec3::Zero();
        for (int k = 0; k < 4; ++k) {
            m += s.v[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] / 4.0;
            w += u.v[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] / 4.0;
        }
        for (int k = 0; k < 6; ++k)
            EXPECT_NEAR(st[static_cast<std::size_t>(c * 6 + k)], m(voigt[k][0], voigt[k][1]), 1e-14 * (1.0 + m.norm()));
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(dp[static_cast<std::size_t>(c * 3 + i)], w(i), 1e-14 * (1.0 + w.norm()));
    }
}

TEST(Vtk, FileRoundTripWithPostprocessing) {
    const auto sol = solve_cube([](const Vec3& x) { return Vec3(x(2), 1.0, 0.0); });
    const auto post = postprocess_displacement(sol);
    const std::string path = ::testing::TempDir() + "alfeld_vtk_test.vtk";
    write_vtk_file(path, sol, &post);
    std::ifstream in(path);
    ASSERT_TRUE(in.good());
    const VtkContents a = read_vtk(in);
    std::stringstream ss;
    write_vtk(ss, sol, post);
    const VtkContents b = read_vtk(ss);
    EXPECT_EQ(a.cell_arrays, b.cell_arrays);
    std::remove(path.c_str());
    EXPECT_THROW(write_vtk_file("/nonexistent_dir/x.vtk", sol), Error);
}
