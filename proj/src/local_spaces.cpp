#include "alfeld/local_spaces.hpp"

#include "alfeld/error.hpp"
#include "alfeld/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <sstream>

namespace alfeld {

std::string to_string(StressVariant v) {
    switch (v) {
        case StressVariant::full: return "full";
        case StressVariant::reduced: return "reduced";
        case StressVariant::reduced2: return "reduced2";
    }
    return "?";
}

int stress_dim(StressVariant v) {
    switch (v) {
        case StressVariant::full: return 42;
        case StressVariant::reduced: return 24;
        case StressVariant::reduced2: return 12;
    }
    return 0;
}

int facet_dof_count(StressVariant v) {
    switch (v) {
        case StressVariant::full: return 9;
        case StressVariant::reduced: return 6;
        case StressVariant::reduced2: return 3;
    }
    return 0;
}

int cell_dof_count(StressVariant v) { return v == StressVariant::full ? 6 : 0; }

int sym_index(int i, int j) {
    static constexpr int table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return table[i][j];
}

// ---------------------------------------------------------------------------

std::array<double, 4> MacroGeometry::macro_bary(const Vec3& x) const {
    const Vec3 l = jac_inv * (x - p[0]);
    return {1.0 - l.sum(), l(0), l(1), l(2)};
}

std::array<double, 4> MacroGeometry::sub_bary(int s, const Vec3& x) const {
    std::array<double, 4> b{};
    for (int v = 0; v < 4; ++v)
        b[static_cast<std::size_t>(v)] =
            1.0 + grad_lambda[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)].dot(x - sub_vertex[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)]);
    return b;
}

int MacroGeometry::locate_subtet(const Vec3& x) const {
    int best = 0;
    double best_min = -1e300;
    for (int s = 0; s < 4; ++s) {
        const auto b = sub_bary(s, x);
        const double m = *std::min_element(b.begin(), b.end());
        if (m > best_min) {
            best_min = m;
            best = s;
        }
    }
    return best;
}

SplitGeometry<double> MacroGeometry::split_geometry() const {
    std::vector<Coords<double>> v;
    for (const auto& q : p) v.push_back({q(0), q(1), q(2)});
    return make_split_geometry(v);
}

MacroGeometry macro_geometry(const std::array<Vec3, 4>& verts) {
    MacroGeometry g;
    g.p = verts;
    Mat3 jac;
    for (int i = 0; i < 3; ++i) jac.col(i) = verts[static_cast<std::size_t>(i + 1)] - verts[0];
    const double det = jac.determinant();
    ALFELD_REQUIRE(det > 0.0, InvalidArgument, "macro_geometry: tetrahedron is degenerate or inverted");
    g.volume = det / 6.0;
    g.jac_inv = jac.inverse();
    g.z = (verts[0] + verts[1] + verts[2] + verts[3]) / 4.0;
    g.diameter = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) g.diameter = std::max(g.diameter, (verts[static_cast<std::size_t>(a)] - verts[static_cast<std::size_t>(b)]).norm());

    const auto sg = g.split_geometry();
    for (int s = 0; s < 4; ++s) {
        const auto su = static_cast<std::size_t>(s);
        g.sub_volume[su] = sg.sub_volume[su];
        Vec3 c = Vec3::Zero();
        for (int v = 0; v < 4; ++v) {
            const auto vu = static_cast<std::size_t>(v);
            const auto& q = sg.vertex(s, v);
            g.sub_vertex[su][vu] = Vec3(q[0], q[1], q[2]);
            const auto& gl = sg.grad_lambda[su][vu];
            g.grad_lambda[su][vu] = Vec3(gl[0], gl[1], gl[2]);
            c += g.sub_vertex[su][vu];
        }
        g.sub_centroid[su] = c / 4.0;
        for (int j = 0; j < 4; ++j) g.centroid_bary(s, j) = sg.centroid_bary[su][static_cast<std::size_t>(j)];
    }
    for (int m = 0; m < 4; ++m) {
        const auto mu = static_cast<std::size_t>(m);
        std::array<int, 3> slots{};
        int k = 0;
        for (int v = 0; v < 4; ++v)
            if (v != m) slots[static_cast<std::size_t>(k++)] = v;
        g.facet_slots[mu] = slots;
        const Vec3 e1 = verts[static_cast<std::size_t>(slots[1])] - verts[static_cast<std::size_t>(slots[0])];
        const Vec3 e2 = verts[static_cast<std::size_t>(slots[2])] - verts[static_cast<std::size_t>(slots[0])];
        Vec3 n = e1.cross(e2);
        g.facet_area[mu] = 0.5 * n.norm();
        n.normalize();
        if (n.dot(verts[mu] - verts[static_cast<std::size_t>(slots[0])]) > 0.0) n = -n;
        g.facet_normal[mu] = n;
    }
    return g;
}

MacroGeometry macro_geometry(const SplitMesh& mesh, int cell) {
    const auto& parent = mesh.complex.parent;
    const auto& cv = parent.cells[static_cast<std::size_t>(cell)];
    std::array<Vec3, 4> verts;
    for (int v = 0; v < 4; ++v) verts[static_cast<std::size_t>(v)] = parent.vertices[static_cast<std::size_t>(cv[static_cast<std::size_t>(v)])];
    MacroGeometry g = macro_geometry(verts);
    g.cell = cell;
    for (int m = 0; m < 4; ++m) {
        const auto mu = static_cast<std::size_t>(m);
        const int fid = mesh.conn.macro.cell_facets[static_cast<std::size_t>(cell)][mu];
        const Facet& f = mesh.conn.macro.facets[static_cast<std::size_t>(fid)];
        g.facet_id[mu] = fid;
        g.facet_normal[mu] = Vec3(f.normal(0), f.normal(1), f.normal(2));
        for (int a = 0; a < 3; ++a) {
            const auto it = std::find(cv.begin(), cv.end(), f.vertices[static_cast<std::size_t>(a)]);
            g.facet_slots[mu][static_cast<std::size_t>(a)] = static_cast<int>(it - cv.begin());
        }
    }
    return g;
}

// ---------------------------------------------------------------------------

std::vector<DofDescriptor> dof_descriptors(const MacroGeometry& geo, StressVariant variant) {
    std::vector<DofDescriptor> dofs;
    std::vector<int> order{0, 1, 2, 3};
    if (geo.facet_id[0] >= 0)
        std::sort(order.begin(), order.end(), [&](int a, int b) { return geo.facet_id[static_cast<std::size_t>(a)] < geo.facet_id[static_cast<std::size_t>(b)]; });
    for (int m : order) {
        const auto mu = static_cast<std::size_t>(m);
        const Vec3& n = geo.facet_normal[mu];
        const auto& slots = geo.facet_slots[mu];
        auto make = [&](DofKind kind, int index) {
            DofDescriptor d;
            d.kind = kind;
            d.local_facet = m;
            d.index = index;
            for (auto& gv : d.g) gv.setZero();
            return d;
        };
        switch (variant) {
            case StressVariant::full:
                for (int a = 0; a < 3; ++a)
                    for (int k = 0; k < 3; ++k) {
                        auto d = make(DofKind::facet_p1, a * 3 + k);
                        d.g[static_cast<std::size_t>(a)] = Vec3::Unit(k);
                        dofs.push_back(d);
                    }
                break;
            case StressVariant::reduced: {
                for (int a = 0; a < 3; ++a) {
                    auto d = make(DofKind::facet_normal_p1, a);
                    d.g[static_cast<std::size_t>(a)] = n;
                    dofs.push_back(d);
                }
                const Vec3 x0 = geo.p[static_cast<std::size_t>(slots[0])];
                const Vec3 x1 = geo.p[static_cast<std::size_t>(slots[1])];
                const Vec3 x2 = geo.p[static_cast<std::size_t>(slots[2])];
                const Vec3 t1 = (x1 - x0).normalized();
                const Vec3 t2 = n.cross(t1);
                const Vec3 cf = (x0 + x1 + x2) / 3.0;
                const double hf = std::max({(x1 - x0).norm(), (x2 - x0).norm(), (x2 - x1).norm()});
                auto t1d = make(DofKind::facet_rigid, 3);
                auto t2d = make(DofKind::facet_rigid, 4);
                auto rd = make(DofKind::facet_rigid, 5);
                for (int a = 0; a < 3; ++a) {
                    const auto au = static_cast<std::size_t>(a);
                    t1d.g[au] = t1;
                    t2d.g[au] = t2;
                    rd.g[au] = n.cross(geo.p[static_cast<std::size_t>(slots[au])] - cf) / hf;
                }
                dofs.push_back(t1d);
                dofs.push_back(t2d);
                dofs.push_back(rd);
                break;
            }
            case StressVariant::reduced2:
                for (int k = 0; k < 3; ++k) {
                    auto d = make(DofKind::facet_constant, k);
                    for (auto& gv : d.g) gv = Vec3::Unit(k);
                    dofs.push_back(d);
                }
                break;
        }
    }
    if (variant == StressVariant::full) {
        int idx = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                DofDescriptor d;
                d.kind = DofKind::cell_integral;
                d.index = idx++;
                d.comp_i = i;
                d.comp_j = j;
                for (auto& gv : d.g) gv.setZero();
                dofs.push_back(d);
            }
    }
    return dofs;
}

Eigen::MatrixXd dof_matrix(const MacroGeometry& geo, const std::vector<DofDescriptor>& dofs) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dofs.size()), kRawSize);
    for (std::size_t r = 0; r < dofs.size(); ++r) {
        const auto& dof = dofs[r];
        const auto ri = static_cast<Eigen::Index>(r);
        if (dof.kind == DofKind::cell_integral) {
            for (int s = 0; s < 4; ++s)
                for (int v = 0; v < 4; ++v)
                    d(ri, (s * 4 + v) * 6 + sym_index(dof.comp_i, dof.comp_j)) += geo.sub_volume[static_cast<std::size_t>(s)] / 4.0;
            continue;
        }
        const int m = dof.local_facet;
        const auto mu = static_cast<std::size_t>(m);
        const Vec3& n = geo.facet_normal[mu];
        const double area = geo.facet_area[mu];
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const double w = area * (a == b ? 2.0 : 1.0) / 12.0;
                const Vec3& ga = dof.g[static_cast<std::size_t>(a)];
                const int slot = geo.facet_slots[mu][static_cast<std::size_t>(b)];
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) d(ri, (m * 4 + slot) * 6 + sym_index(i, j)) += w * ga(i) * n(j);
            }
    }
    return d;
}

Eigen::VectorXd dof_functionals(const MacroGeometry& geo, const std::vector<DofDescriptor>& dofs,
                                const MatrixField& field, int facet_degree, int cell_degree) {
    const auto& r2 = simplex_rule(2, facet_degree);
    const auto& r3 = simplex_rule(3, cell_degree);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dofs.size()));

    // Cache field values per facet and on the subtets.
    std::array<std::vector<Mat3>, 4> facet_vals;
    std::array<std::vector<Vec3>, 4> facet_pts;
    std::array<std::vector<Mat3>, 4> cell_vals;
    bool need_cell = false;
    for (const auto& d : dofs) {
        if (d.kind == DofKind::cell_integral) {
            need_cell = true;
            continue;
        }
        const auto mu = static_cast<std::size_t>(d.local_facet);
        if (!facet_vals[mu].empty()) continue;
        for (const auto& b : r2.points) {
            Vec3 x = Vec3::Zero();
            for (int a = 0; a < 3; ++a) x += b[static_cast<std::size_t>(a)] * geo.p[static_cast<std::size_t>(geo.facet_slots[mu][static_cast<std::size_t>(a)])];
            facet_pts[mu].push_back(x);
            facet_vals[mu].push_back(field(x));
        }
    }
    if (need_cell)
        for (int s = 0; s < 4; ++s)
            for (const auto& b : r3.points) {
                Vec3 x = Vec3::Zero();
                for (int v = 0; v < 4; ++v) x += b[static_cast<std::size_t>(v)] * geo.sub_vertex[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
                cell_vals[static_cast<std::size_t>(s)].push_back(field(x));
            }

    for (std::size_t r = 0; r < dofs.size(); ++r) {
        const auto& d = dofs[r];
        double acc = 0.0;
        if (d.kind == DofKind::cell_integral) {
            for (int s = 0; s < 4; ++s) {
                double part = 0.0;
                for (std::size_t q = 0; q < r3.size(); ++q)
                    part += r3.weights[q] * cell_vals[static_cast<std::size_t>(s)][q](d.comp_i, d.comp_j);
                acc += 6.0 * geo.sub_volume[static_cast<std::size_t>(s)] * part;
            }
        } else {
            const auto mu = static_cast<std::size_t>(d.local_facet);
            const Vec3& n = geo.facet_normal[mu];
            for (std::size_t q = 0; q < r2.size(); ++q) {
                Vec3 g = Vec3::Zero();
                for (int a = 0; a < 3; ++a) g += r2.points[q][static_cast<std::size_t>(a)] * d.g[static_cast<std::size_t>(a)];
                acc += r2.weights[q] * (facet_vals[mu][q] * n).dot(g);
            }
            acc *= 2.0 * geo.facet_area[mu];
        }
        out(static_cast<Eigen::Index>(r)) = acc;
    }
    return out;
}

namespace {

Eigen::MatrixXd to_eigen(const DenseRows<double>& rows, int cols) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
    return m;
}

}  // namespace

Eigen::MatrixXd constraint_matrix(const MacroGeometry& geo, StressVariant variant) {
    const auto sg = geo.split_geometry();
    const RawLayout L(3, true);
    auto rows = continuity_rows(sg, L);
    if (variant == StressVariant::reduced) {
        append_rows(rows, facet_rigid_rows(sg, L));
        append_rows(rows, div_rigid_rows(sg, L));
    } else if (variant == StressVariant::reduced2) {
        append_rows(rows, facet_constant_rows(sg, L));
        append_rows(rows, div_rigid_rows(sg, L));
    }
    return to_eigen(rows, L.size());
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& rows, int expected, double rel_tol) {
    Eigen::MatrixXd a = rows;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        const double nrm = a.row(r).norm();
        if (nrm > 0.0) a.row(r) /= nrm;
    }
    const Eigen::Index cols = a.cols();
    if (a.rows() == 0) {
        ALFELD_REQUIRE(expected == cols, NumericalError, "null_space: unexpected nullity for an empty constraint set");
        return Eigen::MatrixXd::Identity(cols, cols);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * smax) ++rank;
    const Eigen::Index nullity = cols - rank;
    if (nullity != expected) {
        std::ostringstream msg;
        msg << "null_space: expected nullity " << expected << ", found " << nullity << " (" << cols
            << " unknowns); singular values:";
        for (Eigen::Index i = 0; i < sv.size(); ++i) msg << ' ' << sv(i);
        throw NumericalError(msg.str());
    }
    return svd.matrixV().rightCols(nullity);
}

std::array<Eigen::MatrixXd, 4> raw_to_vertex_values(const Eigen::MatrixXd& raw) {
    std::array<Eigen::MatrixXd, 4> out;
    for (int s = 0; s < 4; ++s) {
        auto& m = out[static_cast<std::size_t>(s)];
        m.resize(36, raw.cols());
        for (int v = 0; v < 4; ++v)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m.row(v * 9 + i * 3 + j) = raw.row((s * 4 + v) * 6 + sym_index(i, j));
    }
    return out;
}

Mat3 raw_value(const Eigen::VectorXd& raw, int s, const std::array<double, 4>& bary) {
    Mat3 m = Mat3::Zero();
    for (int v = 0; v < 4; ++v)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) += bary[static_cast<std::size_t>(v)] * raw((s * 4 + v) * 6 + sym_index(i, j));
    return m;
}

LocalBasis build_stress_basis(const MacroGeometry& geo, StressVariant variant) {
    LocalBasis lb;
    lb.variant = variant;
    lb.cell = geo.cell;
    lb.nshape = stress_dim(variant);
    // Two stages: the 42-dimensional space first, then the variant rows inside it.
    Eigen::MatrixXd ns = null_space(constraint_matrix(geo, StressVariant::full), stress_dim(StressVariant::full));
    if (variant != StressVariant::full) {
        const Eigen::MatrixXd all = constraint_matrix(geo, variant);
        const Eigen::Index nc = all.rows() - 54;
        ns = ns * null_space(all.bottomRows(nc) * ns, lb.nshape);
    }
    lb.dofs = dof_descriptors(geo, variant);
    const Eigen::MatrixXd dn = dof_matrix(geo, lb.dofs) * ns;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dn);
    lb.dof_sigma_max = svd.singularValues()(0);
    lb.dof_sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
    ALFELD_REQUIRE(lb.dof_sigma_min > 0.0, NumericalError, "build_stress_basis: singular DOF matrix");
    if (lb.dof_sigma_max / lb.dof_sigma_min > 1e8) {
        static std::atomic<bool> warned{false};
        if (!warned.exchange(true))
            std::cerr << "warning: DOF matrix condition number " << lb.dof_sigma_max / lb.dof_sigma_min
                      << " exceeds 1e8 (cell " << geo.cell << ")\n";
    }
    lb.raw = ns * dn.partialPivLu().inverse();
    lb.vertex_values = raw_to_vertex_values(lb.raw);
    return lb;
}

// ---------------------------------------------------------------------------

Vec3 rigid_field(const MacroGeometry& geo, int k, const Vec3& x) {
    if (k < 3) return Vec3::Unit(k);
    return Vec3::Unit(k - 3).cross(x - geo.z) / geo.diameter;
}

RigidOps rigid_ops(const MacroGeometry& geo) {
    RigidOps ops;
    ops.PT = Eigen::MatrixXd::Zero(12, 12);
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 3; ++i) ops.PT(k * 3 + i, j * 3 + i) = geo.centroid_bary(k, j);
    ops.IT = ops.PT.inverse();
    ops.rigid_vh.resize(12, 6);
    for (int k = 0; k < 6; ++k)
        for (int j = 0; j < 4; ++j) ops.rigid_vh.block(j * 3, k, 3, 1) = rigid_field(geo, k, geo.p[static_cast<std::size_t>(j)]);
    ops.ptr_w = ops.PT * ops.rigid_vh;
    Eigen::MatrixXd weighted = ops.ptr_w.transpose();
    for (int k = 0; k < 4; ++k) weighted.middleCols(k * 3, 3) *= geo.sub_volume[static_cast<std::size_t>(k)];
    ops.complement = null_space(weighted, 6);

    const auto& rule = simplex_rule(3, 2);
    ops.rigid_gram = Eigen::MatrixXd::Zero(6, 6);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        Vec3 x = Vec3::Zero();
        for (int v = 0; v < 4; ++v) x += rule.points[q][static_cast<std::size_t>(v)] * geo.p[static_cast<std::size_t>(v)];
        Eigen::Matrix<double, 3, 6> r;
        for (int k = 0; k < 6; ++k) r.col(k) = rigid_field(geo, k, x);
        ops.rigid_gram += 6.0 * geo.volume * rule.weights[q] * r.transpose() * r;
    }
    return ops;
}

Eigen::VectorXd project_wh(const MacroGeometry& geo, const VectorField& f, int degree) {
    const auto& rule = simplex_rule(3, degree);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(12);
    for (int s = 0; s < 4; ++s) {
        Vec3 acc = Vec3::Zero();
        for (std::size_t q = 0; q < rule.size(); ++q) {
            Vec3 x = Vec3::Zero();
            for (int v = 0; v < 4; ++v) x += rule.points[q][static_cast<std::size_t>(v)] * geo.sub_vertex[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
            acc += rule.weights[q] * f(x);
        }
        out.segment(s * 3, 3) = 6.0 * acc;
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::array<int, 2>, 10> kBernsteinPairs{
    {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

}  // namespace

std::array<double, 10> bernstein2(const std::array<double, 4>& lam) {
    std::array<double, 10> b{};
    for (std::size_t k = 0; k < 10; ++k) {
        const auto [a, c] = kBernsteinPairs[k];
        b[k] = (a == c ? 1.0 : 2.0) * lam[static_cast<std::size_t>(a)] * lam[static_cast<std::size_t>(c)];
    }
    return b;
}

std::array<Vec3, 10> bernstein2_grad(const std::array<double, 4>& lam, const std::array<Vec3, 4>& gl) {
    std::array<Vec3, 10> g;
    for (std::size_t k = 0; k < 10; ++k) {
        const auto a = static_cast<std::size_t>(kBernsteinPairs[k][0]);
        const auto c = static_cast<std::size_t>(kBernsteinPairs[k][1]);
        g[k] = 2.0 * (lam[a] * gl[c] + lam[c] * gl[a]);
        if (a == c) g[k] *= 0.5;
    }
    return g;
}

std::array<Vec3, 4> macro_grad_lambda(const MacroGeometry& geo) {
    std::array<Vec3, 4> g;
    g[0].setZero();
    for (int i = 0; i < 3; ++i) {
        g[static_cast<std::size_t>(i + 1)] = geo.jac_inv.row(i).transpose();
        g[0] -= g[static_cast<std::size_t>(i + 1)];
    }
    return g;
}

Vec3 p2_value(const MacroGeometry& geo, const Eigen::VectorXd& c, const Vec3& x) {
    const auto b = bernstein2(geo.macro_bary(x));
    Vec3 v = Vec3::Zero();
    for (int k = 0; k < 10; ++k) v += b[static_cast<std::size_t>(k)] * c.segment(k * 3, 3);
    return v;
}

ShBasis sh_basis(const MacroGeometry& geo) {
    ShBasis sh;
    sh.moments = Eigen::MatrixXd::Zero(6, 30);
    const auto& rule = simplex_rule(3, 4);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const auto& lb = rule.points[q];
        const std::array<double, 4> lam{lb[0], lb[1], lb[2], lb[3]};
        Vec3 x = Vec3::Zero();
        for (int v = 0; v < 4; ++v) x += lam[static_cast<std::size_t>(v)] * geo.p[static_cast<std::size_t>(v)];
        const auto b = bernstein2(lam);
        const double w = 6.0 * geo.volume * rule.weights[q];
        for (int k = 0; k < 6; ++k) {
            const Vec3 r = rigid_field(geo, k, x);
            for (int beta = 0; beta < 10; ++beta)
                for (int i = 0; i < 3; ++i) sh.moments(k, beta * 3 + i) += w * b[static_cast<std::size_t>(beta)] * r(i);
        }
    }
    sh.basis = null_space(sh.moments, 24);
    return sh;
}

}  // namespace alfeld
