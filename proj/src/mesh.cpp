#include "alfeld/mesh.hpp"

#include "alfeld/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

namespace alfeld {

namespace {

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// Unit normal of the hyperplane through `pts` (N points in R^N).
Point hyperplane_normal(const std::vector<Point>& pts) {
    const int n = static_cast<int>(pts[0].size());
    Eigen::MatrixXd e(n - 1, n);
    for (int i = 1; i < n; ++i) e.row(i - 1) = (pts[static_cast<std::size_t>(i)] - pts[0]).transpose();
    Point nrm;
    if (n == 2) {
        nrm = Point(2);
        nrm << -e(0, 1), e(0, 0);
    } else if (n == 3) {
        const Eigen::Vector3d a = e.row(0).transpose(), b = e.row(1).transpose();
        nrm = a.cross(b);
    } else {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(e);
        const Eigen::MatrixXd k = lu.kernel();
        ALFELD_REQUIRE(k.cols() == 1, NumericalError, "degenerate facet");
        nrm = k.col(0);
    }
    const double len = nrm.norm();
    ALFELD_REQUIRE(len > 0.0, NumericalError, "degenerate facet");
    return nrm / len;
}

double facet_measure(const std::vector<Point>& pts) {
    const int n = static_cast<int>(pts[0].size());
    if (n == 1) return 1.0;
    Eigen::MatrixXd e(n, n - 1);
    for (int i = 1; i < n; ++i) e.col(i - 1) = pts[static_cast<std::size_t>(i)] - pts[0];
    return std::sqrt(std::max(0.0, (e.transpose() * e).determinant())) / factorial(n - 1);
}

}  // namespace

// ---------------------------------------------------------------------------

SimplexGeometry::SimplexGeometry(const std::vector<Point>& verts) : vertices(verts) {
    ALFELD_REQUIRE(!verts.empty(), InvalidArgument, "SimplexGeometry: no vertices");
    ndim = static_cast<int>(verts[0].size());
    ALFELD_REQUIRE(static_cast<int>(verts.size()) == ndim + 1, InvalidArgument,
                   "SimplexGeometry: need N+1 vertices");
    jacobian.resize(ndim, ndim);
    for (int i = 0; i < ndim; ++i) jacobian.col(i) = verts[static_cast<std::size_t>(i + 1)] - verts[0];
    det = jacobian.determinant();
    volume = std::abs(det) / factorial(ndim);
    if (det != 0.0) {
        jacobian_inv = jacobian.inverse();
        grad_lambda.assign(static_cast<std::size_t>(ndim + 1), Point::Zero(ndim));
        Point g0 = Point::Zero(ndim);
        for (int i = 0; i < ndim; ++i) {
            grad_lambda[static_cast<std::size_t>(i + 1)] = jacobian_inv.row(i).transpose();
            g0 -= grad_lambda[static_cast<std::size_t>(i + 1)];
        }
        grad_lambda[0] = g0;
    }
}

Point SimplexGeometry::map(const std::vector<double>& bary) const {
    Point x = Point::Zero(ndim);
    for (int i = 0; i <= ndim; ++i) x += bary[static_cast<std::size_t>(i)] * vertices[static_cast<std::size_t>(i)];
    return x;
}

std::vector<double> SimplexGeometry::barycentric(const Point& x) const {
    ALFELD_REQUIRE(det != 0.0, NumericalError, "barycentric: degenerate simplex");
    const Point xh = jacobian_inv * (x - vertices[0]);
    std::vector<double> b(static_cast<std::size_t>(ndim + 1));
    b[0] = 1.0 - xh.sum();
    for (int i = 0; i < ndim; ++i) b[static_cast<std::size_t>(i + 1)] = xh(i);
    return b;
}

Point SimplexGeometry::centroid() const {
    Point c = Point::Zero(ndim);
    for (const auto& v : vertices) c += v;
    return c / (ndim + 1);
}

double SimplexGeometry::diameter() const {
    double d = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j) d = std::max(d, (vertices[i] - vertices[j]).norm());
    return d;
}

// ---------------------------------------------------------------------------

std::vector<Point> SimplexMesh::cell_vertices(int c) const {
    std::vector<Point> v;
    v.reserve(cells[static_cast<std::size_t>(c)].size());
    for (int i : cells[static_cast<std::size_t>(c)]) v.push_back(vertices[static_cast<std::size_t>(i)]);
    return v;
}

double SimplexMesh::signed_volume(int c) const {
    const auto v = cell_vertices(c);
    Eigen::MatrixXd j(ndim, ndim);
    for (int i = 0; i < ndim; ++i) j.col(i) = v[static_cast<std::size_t>(i + 1)] - v[0];
    return j.determinant() / factorial(ndim);
}

double SimplexMesh::total_volume() const {
    double s = 0.0;
    for (int c = 0; c < num_cells(); ++c) s += signed_volume(c);
    return s;
}

double SimplexMesh::max_diameter() const {
    double h = 0.0;
    for (int c = 0; c < num_cells(); ++c) h = std::max(h, cell_geometry(c).diameter());
    return h;
}

int FacetTable::num_boundary() const {
    return static_cast<int>(std::count_if(facets.begin(), facets.end(), [](const Facet& f) { return f.on_boundary(); }));
}

FacetTable build_facet_table(const SimplexMesh& mesh) {
    const int nv = mesh.ndim + 1;
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> incidence;
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const auto& cell = mesh.cells[static_cast<std::size_t>(c)];
        for (int i = 0; i < nv; ++i) {
            std::vector<int> key;
            key.reserve(static_cast<std::size_t>(nv - 1));
            for (int j = 0; j < nv; ++j)
                if (j != i) key.push_back(cell[static_cast<std::size_t>(j)]);
            std::sort(key.begin(), key.end());
            incidence[key].emplace_back(c, i);
        }
    }

    FacetTable table;
    table.cell_facets.assign(static_cast<std::size_t>(mesh.num_cells()), std::vector<int>(static_cast<std::size_t>(nv), -1));
    table.facets.reserve(incidence.size());
    for (auto& [key, inc] : incidence) {
        if (inc.size() > 2) {
            std::ostringstream msg;
            msg << "nonconforming mesh: facet (";
            for (std::size_t k = 0; k < key.size(); ++k) msg << (k ? " " : "") << key[k];
            msg << ") shared by " << inc.size() << " cells";
            throw ParseError(msg.str());
        }
        std::sort(inc.begin(), inc.end());
        Facet f;
        f.vertices = key;
        for (std::size_t k = 0; k < inc.size(); ++k) {
            f.cells[k] = inc[k].first;
            f.local_index[k] = inc[k].second;
        }
        std::vector<Point> pts;
        for (int v : key) pts.push_back(mesh.vertices[static_cast<std::size_t>(v)]);
        f.normal = hyperplane_normal(pts);
        f.measure = facet_measure(pts);
        // Orient away from cells[0]: the opposite vertex must lie on the negative side.
        const int c0 = f.cells[0];
        const int opp = mesh.cells[static_cast<std::size_t>(c0)][static_cast<std::size_t>(f.local_index[0])];
        if (f.normal.dot(mesh.vertices[static_cast<std::size_t>(opp)] - pts[0]) > 0.0) f.normal = -f.normal;
        const int id = static_cast<int>(table.facets.size());
        for (const auto& [c, i] : inc) table.cell_facets[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)] = id;
        table.facets.push_back(std::move(f));
    }
    return table;
}

void validate_mesh(const SimplexMesh& mesh) {
    ALFELD_REQUIRE(mesh.ndim >= 1, ParseError, "mesh dimension must be >= 1");
    const int nv = mesh.num_vertices();
    for (int v = 0; v < nv; ++v)
        ALFELD_REQUIRE(mesh.vertices[static_cast<std::size_t>(v)].size() == mesh.ndim, ParseError,
                       "vertex " + std::to_string(v) + " has wrong coordinate count");
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const auto& cell = mesh.cells[static_cast<std::size_t>(c)];
        ALFELD_REQUIRE(static_cast<int>(cell.size()) == mesh.ndim + 1, ParseError,
                       "cell " + std::to_string(c) + " must have N+1 vertices");
        for (int v : cell)
            ALFELD_REQUIRE(v >= 0 && v < nv, ParseError,
                           "cell " + std::to_string(c) + " references vertex " + std::to_string(v) + " out of range");
        const double vol = mesh.signed_volume(c);
        ALFELD_REQUIRE(vol > 0.0, ParseError,
                       "cell " + std::to_string(c) + " has non-positive signed volume " + std::to_string(vol));
    }
    build_facet_table(mesh);
}

// ---------------------------------------------------------------------------

SimplexMesh generate_cube_mesh(int n) {
    ALFELD_REQUIRE(n >= 1, InvalidArgument, "generate_cube_mesh: n must be >= 1");
    SimplexMesh mesh;
    mesh.ndim = 3;
    const int m = n + 1;
    auto vid = [m](int i, int j, int k) { return (k * m + j) * m + i; };
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) {
                Point p(3);
                p << static_cast<double>(i) / n, static_cast<double>(j) / n, static_cast<double>(k) / n;
                mesh.vertices.push_back(p);
            }
    // Kuhn subdivision: one tetrahedron per axis permutation, walking from
    // the (0,0,0) corner to the (1,1,1) corner of the subcube.
    std::array<int, 3> perm{0, 1, 2};
    std::vector<std::array<int, 3>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                for (const auto& p : perms) {
                    std::array<int, 3> off{0, 0, 0};
                    std::vector<int> cell{vid(i, j, k)};
                    for (int a : p) {
                        off[static_cast<std::size_t>(a)] = 1;
                        cell.push_back(vid(i + off[0], j + off[1], k + off[2]));
                    }
                    mesh.cells.push_back(cell);
                    if (mesh.signed_volume(mesh.num_cells() - 1) < 0.0) std::swap(mesh.cells.back()[2], mesh.cells.back()[3]);
                }
    return mesh;
}

SimplexMesh reference_simplex_mesh(int ndim) {
    ALFELD_REQUIRE(ndim >= 1, InvalidArgument, "reference_simplex_mesh: ndim must be >= 1");
    SimplexMesh mesh;
    mesh.ndim = ndim;
    mesh.vertices.push_back(Point::Zero(ndim));
    for (int i = 0; i < ndim; ++i) mesh.vertices.push_back(Point::Unit(ndim, i));
    std::vector<int> cell(static_cast<std::size_t>(ndim + 1));
    std::iota(cell.begin(), cell.end(), 0);
    mesh.cells.push_back(cell);
    return mesh;
}

// ---------------------------------------------------------------------------

SimplexMesh read_mesh(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next_line = [&](const char* what) -> std::istringstream {
        while (std::getline(in, line)) {
            ++lineno;
            const auto pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos || line[pos] == '#') continue;
            return std::istringstream(line);
        }
        throw ParseError("mesh: unexpected end of input while reading " + std::string(what) + " (after line " +
                         std::to_string(lineno) + ")");
    };
    auto fail = [&](const std::string& msg) { throw ParseError("mesh line " + std::to_string(lineno) + ": " + msg); };
    auto expect_end = [&](std::istringstream& ls) {
        std::string extra;
        if (ls >> extra) fail("unexpected trailing token '" + extra + "'");
    };

    SimplexMesh mesh;
    long long nverts = 0, ncells = 0;
    {
        auto ls = next_line("header");
        if (!(ls >> mesh.ndim >> nverts >> ncells)) fail("malformed header, expected 'ndim nverts ncells'");
        expect_end(ls);
        if (mesh.ndim < 1 || mesh.ndim > 8) fail("unsupported dimension " + std::to_string(mesh.ndim));
        if (nverts < mesh.ndim + 1 || ncells < 1) fail("header counts must be positive (nverts >= ndim+1, ncells >= 1)");
    }
    mesh.vertices.reserve(static_cast<std::size_t>(nverts));
    for (long long v = 0; v < nverts; ++v) {
        auto ls = next_line("vertices");
        Point p(mesh.ndim);
        for (int d = 0; d < mesh.ndim; ++d)
            if (!(ls >> p(d))) fail("vertex " + std::to_string(v) + ": expected " + std::to_string(mesh.ndim) + " coordinates");
        expect_end(ls);
        if (!p.allFinite()) fail("vertex " + std::to_string(v) + ": non-finite coordinate");
        mesh.vertices.push_back(p);
    }
    mesh.cells.reserve(static_cast<std::size_t>(ncells));
    for (long long c = 0; c < ncells; ++c) {
        auto ls = next_line("cells");
        std::vector<int> cell(static_cast<std::size_t>(mesh.ndim + 1));
        for (auto& idx : cell) {
            long long val;
            if (!(ls >> val)) fail("cell " + std::to_string(c) + ": expected " + std::to_string(mesh.ndim + 1) + " vertex indices");
            if (val < 0 || val >= nverts) fail("cell " + std::to_string(c) + ": vertex index " + std::to_string(val) + " out of range");
            idx = static_cast<int>(val);
        }
        expect_end(ls);
        mesh.cells.push_back(cell);
        if (!(mesh.signed_volume(static_cast<int>(c)) > 0.0))
            fail("cell " + std::to_string(c) + " is inverted or degenerate (signed volume " +
                 std::to_string(mesh.signed_volume(static_cast<int>(c))) + ")");
    }
    while (std::getline(in, line)) {
        ++lineno;
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos != std::string::npos && line[pos] != '#') fail("unexpected content after the last cell");
    }
    validate_mesh(mesh);
    return mesh;
}

SimplexMesh read_mesh_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open mesh file '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return read_mesh(buf.str());
}

void write_mesh(std::ostream& out, const SimplexMesh& mesh) {
    const auto old_prec = out.precision(17);
    out << mesh.ndim << ' ' << mesh.num_vertices() << ' ' << mesh.num_cells() << '\n';
    for (const auto& p : mesh.vertices) {
        for (int d = 0; d < mesh.ndim; ++d) out << (d ? " " : "") << p(d);
        out << '\n';
    }
    for (const auto& c : mesh.cells) {
        for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
        out << '\n';
    }
    out.precision(old_prec);
}

std::string write_mesh(const SimplexMesh& mesh) {
    std::ostringstream out;
    write_mesh(out, mesh);
    return out.str();
}

// ---------------------------------------------------------------------------

AlfeldComplex alfeld_split(const SimplexMesh& mesh) {
    AlfeldComplex cx;
    cx.parent = mesh;
    cx.fine.ndim = mesh.ndim;
    cx.fine.vertices = mesh.vertices;
    const int nv = mesh.ndim + 1;
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const double vol = mesh.signed_volume(c);
        ALFELD_REQUIRE(vol > 0.0, InvalidArgument, "alfeld_split: cell " + std::to_string(c) + " is degenerate or inverted");
        const Point z = mesh.cell_geometry(c).centroid();
        cx.split_points.push_back(z);
        cx.fine.vertices.push_back(z);
    }
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const int zid = cx.split_vertex(c);
        for (int i = 0; i < nv; ++i) {
            auto sub = mesh.cells[static_cast<std::size_t>(c)];
            sub[static_cast<std::size_t>(i)] = zid;
            cx.fine.cells.push_back(sub);
        }
    }
    return cx;
}

Connectivity build_connectivity(const AlfeldComplex& complex) {
    Connectivity conn;
    conn.macro = build_facet_table(complex.parent);
    conn.fine = build_facet_table(complex.fine);
    const int nc = complex.parent.num_cells();
    const int nv = complex.ndim() + 1;
    conn.internal_facets.assign(static_cast<std::size_t>(nc), {});
    std::vector<int> expected_internal(static_cast<std::size_t>(nc), 0);
    for (int f = 0; f < conn.fine.num_facets(); ++f) {
        const Facet& fa = conn.fine.facets[static_cast<std::size_t>(f)];
        const int top = fa.vertices.back();  // split points carry the largest ids
        if (top < complex.parent.num_vertices()) continue;
        const int c = top - complex.parent.num_vertices();
        ALFELD_REQUIRE(!fa.on_boundary() && fa.cells[0] / nv == c && fa.cells[1] / nv == c, NumericalError,
                       "internal facet not shared by two subcells of its macro cell");
        conn.internal_facets[static_cast<std::size_t>(c)].push_back(f);
    }
    for (int c = 0; c < nc; ++c)
        ALFELD_REQUIRE(static_cast<int>(conn.internal_facets[static_cast<std::size_t>(c)].size()) == nv * (nv - 1) / 2,
                       NumericalError, "wrong internal facet count in macro cell " + std::to_string(c));
    return conn;
}

SplitMesh::SplitMesh(const SimplexMesh& mesh) : complex(alfeld_split(mesh)), conn(build_connectivity(complex)) {}

// ---------------------------------------------------------------------------

SimplexMesh refine_red(const SimplexMesh& mesh) {
    ALFELD_REQUIRE(mesh.ndim == 3, InvalidArgument, "refine_red: tetrahedral meshes only");
    SimplexMesh out;
    out.ndim = 3;
    out.vertices = mesh.vertices;
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        auto it = mid.find(key);
        if (it != mid.end()) return it->second;
        const int id = out.num_vertices();
        out.vertices.push_back(0.5 * (mesh.vertices[static_cast<std::size_t>(a)] + mesh.vertices[static_cast<std::size_t>(b)]));
        mid.emplace(key, id);
        return id;
    };
    for (const auto& c : mesh.cells) {
        const int x0 = c[0], x1 = c[1], x2 = c[2], x3 = c[3];
        const int m01 = midpoint(x0, x1), m02 = midpoint(x0, x2), m03 = midpoint(x0, x3);
        const int m12 = midpoint(x1, x2), m13 = midpoint(x1, x3), m23 = midpoint(x2, x3);
        const std::array<std::array<int, 4>, 8> kids{{{x0, m01, m02, m03},
                                                      {m01, x1, m12, m13},
                                                      {m02, m12, x2, m23},
                                                      {m03, m13, m23, x3},
                                                      {m01, m02, m03, m13},
                                                      {m01, m02, m12, m13},
                                                      {m02, m03, m13, m23},
                                                      {m02, m12, m13, m23}}};
        for (const auto& k : kids) {
            out.cells.push_back({k[0], k[1], k[2], k[3]});
            if (out.signed_volume(out.num_cells() - 1) < 0.0) std::swap(out.cells.back()[2], out.cells.back()[3]);
        }
    }
    return out;
}

}  // namespace alfeld
