#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "alfeld/error.hpp"
#include "alfeld/mesh.hpp"

using namespace alfeld;

namespace {

/// Brute-force facet pairing: sorted vertex tuple -> number of incident cells.
std::map<std::vector<int>, int> pair_facets(const SimplexMesh& m) {
    std::map<std::vector<int>, int> count;
    for (const auto& c : m.cells)
        for (std::size_t skip = 0; skip < c.size(); ++skip) {
            std::vector<int> f;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != skip) f.push_back(c[i]);
            std::sort(f.begin(), f.end());
            ++count[f];
        }
    return count;
}

}  // namespace

TEST(CubeMesh, CountsAndVolume) {
    const SimplexMesh m1 = generate_cube_mesh(1);
    EXPECT_EQ(m1.num_vertices(), 8);
    EXPECT_EQ(m1.num_cells(), 6);
    const SimplexMesh m2 = generate_cube_mesh(2);
    EXPECT_EQ(m2.num_vertices(), 27);
    EXPECT_EQ(m2.num_cells(), 48);
    for (int n : {1, 2, 4}) {
        const SimplexMesh m = generate_cube_mesh(n);
        EXPECT_NEAR(m.total_volume(), 1.0, 1e-14);
        for (int c = 0; c < m.num_cells(); ++c) EXPECT_GT(m.signed_volume(c), 0.0);
        EXPECT_NO_THROW(validate_mesh(m));
        EXPECT_NEAR(m.max_diameter(), std::sqrt(3.0) / n, 1e-14);
    }
    EXPECT_THROW(generate_cube_mesh(0), InvalidArgument);
}

TEST(ReadMesh, ReferenceTetrahedron) {
    const SimplexMesh m = read_mesh("# reference tet\n3 4 1\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 1 2 3\n");
    EXPECT_EQ(m.num_cells(), 1);
    EXPECT_NEAR(m.total_volume(), 1.0 / 6.0, 1e-16);
}

TEST(ReadMesh, InvertedCellNamed) {
    try {
        read_mesh("3 4 1\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 2 1 3\n");
        FAIL() << "expected a validation error";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("cell 0"), std::string::npos) << e.what();
    }
}

TEST(ReadMesh, MalformedInputReportsLine) {
    EXPECT_THROW(read_mesh("3 4 1\n0 0 0\n1 0 0\n"), ParseError);
    EXPECT_THROW(read_mesh("3 4 1\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 1 2 7\n"), ParseError);
    EXPECT_THROW(read_mesh("three 4 1\n"), ParseError);
}

TEST(ReadMesh, RoundTrip) {
    const SimplexMesh m = generate_cube_mesh(1);
    const SimplexMesh r = read_mesh(write_mesh(m));
    ASSERT_EQ(r.num_vertices(), m.num_vertices());
    EXPECT_EQ(r.cells, m.cells);
    for (int v = 0; v < m.num_vertices(); ++v) EXPECT_EQ(r.vertices[v], m.vertices[v]);
}

TEST(AlfeldSplit, ReferenceTetAndCube) {
    const AlfeldComplex a = alfeld_split(reference_simplex_mesh(3));
    ASSERT_EQ(a.fine.num_cells(), 4);
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(a.fine.signed_volume(c), 1.0 / 24.0, 1e-16);
    EXPECT_TRUE(a.split_points[0].isApprox(Eigen::Vector3d(0.25, 0.25, 0.25)));

    const AlfeldComplex b = alfeld_split(generate_cube_mesh(1));
    EXPECT_EQ(b.fine.num_cells(), 24);
    EXPECT_NEAR(b.fine.total_volume(), 1.0, 1e-14);
    for (int c = 0; c < b.parent.num_cells(); ++c) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += b.fine.signed_volume(b.subcell(c, i));
        EXPECT_NEAR(s, b.parent.signed_volume(c), 1e-13 * b.parent.signed_volume(c));
    }
}

TEST(AlfeldSplit, TriangleGivesCloughTocher) {
    const AlfeldComplex a = alfeld_split(reference_simplex_mesh(2));
    EXPECT_EQ(a.fine.num_cells(), 3);
    EXPECT_NEAR(a.fine.total_volume(), 0.5, 1e-16);
}

TEST(Connectivity, SingleTet) {
    const SplitMesh s(reference_simplex_mesh(3));
    EXPECT_EQ(s.conn.macro.num_facets(), 4);
    EXPECT_EQ(s.conn.macro.num_boundary(), 4);
    ASSERT_EQ(s.conn.internal_facets.size(), 1u);
    EXPECT_EQ(s.conn.internal_facets[0].size(), 6u);
}

TEST(Connectivity, CubeMatchesBruteForcePairing) {
    for (int n : {1, 2}) {
        const SplitMesh s(generate_cube_mesh(n));
        const auto pairs = pair_facets(s.complex.parent);
        int boundary = 0;
        for (const auto& [f, k] : pairs) {
            EXPECT_LE(k, 2);
            boundary += k == 1;
        }
        EXPECT_EQ(s.conn.macro.num_facets(), static_cast<int>(pairs.size()));
        EXPECT_EQ(s.conn.macro.num_boundary(), boundary);
        if (n == 1) {
            EXPECT_EQ(s.conn.macro.num_facets(), 18);
            EXPECT_EQ(boundary, 12);
        }
        // fine mesh too
        EXPECT_EQ(s.conn.fine.num_facets(), static_cast<int>(pair_facets(s.complex.fine).size()));
    }
}

TEST(Connectivity, NormalsAndOrientation) {
    const SplitMesh s(generate_cube_mesh(2));
    const auto& mesh = s.complex.parent;
    for (const auto& f : s.conn.macro.facets) {
        EXPECT_NEAR(f.normal.norm(), 1.0, 1e-14);
        EXPECT_TRUE(std::is_sorted(f.vertices.begin(), f.vertices.end()));
        // The normal points away from cells[0].
        const Point c0 = mesh.cell_geometry(f.cells[0]).centroid();
        EXPECT_GT(f.normal.dot(mesh.vertices[f.vertices[0]] - c0), 0.0);
        if (!f.on_boundary()) EXPECT_LT(f.cells[0], f.cells[1]);
    }
}

TEST(Connectivity, OrientationIndependentOfVertexNumbering) {
    // Permute vertex ids; after mapping back, facet normals must agree.
    const SimplexMesh m = generate_cube_mesh(1);
    std::vector<int> perm(static_cast<std::size_t>(m.num_vertices()));
    for (int i = 0; i < m.num_vertices(); ++i) perm[static_cast<std::size_t>(i)] = m.num_vertices() - 1 - i;
    SimplexMesh p = m;
    for (int i = 0; i < m.num_vertices(); ++i) p.vertices[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = m.vertices[static_cast<std::size_t>(i)];
    for (auto& c : p.cells)
        for (int& v : c) v = perm[static_cast<std::size_t>(v)];
    const FacetTable a = build_facet_table(m), b = build_facet_table(p);
    ASSERT_EQ(a.num_facets(), b.num_facets());
    for (const auto& fa : a.facets) {
        std::vector<int> key;
        for (int v : fa.vertices) key.push_back(perm[static_cast<std::size_t>(v)]);
        std::sort(key.begin(), key.end());
        const auto it = std::find_if(b.facets.begin(), b.facets.end(), [&](const Facet& f) { return f.vertices == key; });
        ASSERT_NE(it, b.facets.end());
        EXPECT_LE((it->normal - fa.normal).norm(), 1e-14);
    }
}

TEST(SimplexGeometry, BarycentricRoundTrip) {
    const SplitMesh s(generate_cube_mesh(1));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int c = 0; c < s.complex.fine.num_cells(); ++c) {
        const SimplexGeometry g = s.complex.fine.cell_geometry(c);
        for (int k = 0; k < 10; ++k) {
            std::vector<double> b(4);
            double sum = 0.0;
            for (double& x : b) sum += (x = U(rng));
            for (double& x : b) x /= sum;
            const auto back = g.barycentric(g.map(b));
            for (int i = 0; i < 4; ++i) EXPECT_NEAR(back[i], b[i], 1e-13);
        }
    }
}

TEST(RefineRed, NestedChildren) {
    const SimplexMesh m = generate_cube_mesh(1);
    const SimplexMesh r = refine_red(m);
    ASSERT_EQ(r.num_cells(), 8 * m.num_cells());
    EXPECT_NEAR(r.total_volume(), 1.0, 1e-14);
    EXPECT_NO_THROW(validate_mesh(r));
    for (int c = 0; c < r.num_cells(); ++c) {
        const auto parent = m.cell_geometry(c / 8);
        const auto lam = parent.barycentric(r.cell_geometry(c).centroid());
        for (double l : lam) EXPECT_GT(l, -1e-14);
    }
}
