#include "alfeld/dof_numbering.hpp"

#include "alfeld/error.hpp"
#include "alfeld/parallel.hpp"
#include "alfeld/quadrature.hpp"
#include "alfeld/tensor_calculus.hpp"

#include <algorithm>
#include <cmath>

namespace alfeld {

std::string to_string(MethodId m) {
    switch (m) {
        case MethodId::jkm: return "jkm";
        case MethodId::p0: return "p0";
        case MethodId::reduced: return "reduced";
        case MethodId::reduced2: return "reduced2";
        case MethodId::weaksym: return "weaksym";
    }
    return "?";
}

std::string to_string(DisplacementSpace d) {
    switch (d) {
        case DisplacementSpace::vh: return "V_h";
        case DisplacementSpace::wh: return "W_h";
        case DisplacementSpace::rigid: return "R";
        case DisplacementSpace::constant: return "P0";
    }
    return "?";
}

MethodId parse_method(const std::string& s) {
    for (MethodId m : {MethodId::jkm, MethodId::p0, MethodId::reduced, MethodId::reduced2, MethodId::weaksym})
        if (to_string(m) == s) return m;
    throw InvalidArgument("unknown method '" + s + "' (expected jkm, p0, reduced, reduced2 or weaksym)");
}

std::string describe(const MethodConfig& m) {
    if (m.id != MethodId::weaksym) return to_string(m.id);
    return "weaksym/" + to_string(m.weaksym_disp);
}

StressVariant stress_variant(MethodId m) {
    switch (m) {
        case MethodId::jkm:
        case MethodId::p0: return StressVariant::full;
        case MethodId::reduced: return StressVariant::reduced;
        case MethodId::reduced2: return StressVariant::reduced2;
        case MethodId::weaksym: break;
    }
    throw InvalidArgument("stress_variant: the weakly symmetric method has no symmetric stress variant");
}

DisplacementSpace displacement_space(const MethodConfig& m) {
    switch (m.id) {
        case MethodId::jkm: return DisplacementSpace::vh;
        case MethodId::p0: return DisplacementSpace::wh;
        case MethodId::reduced: return DisplacementSpace::rigid;
        case MethodId::reduced2: return DisplacementSpace::constant;
        case MethodId::weaksym: return m.weaksym_disp;
    }
    return DisplacementSpace::vh;
}

int displacement_dim(DisplacementSpace d) {
    switch (d) {
        case DisplacementSpace::vh:
        case DisplacementSpace::wh: return 12;
        case DisplacementSpace::rigid: return 6;
        case DisplacementSpace::constant: return 3;
    }
    return 0;
}

DofTable build_dof_map(const SplitMesh& mesh, const MethodConfig& method) {
    ALFELD_REQUIRE(mesh.complex.ndim() == 3, InvalidArgument, "build_dof_map: tetrahedral meshes only");
    if (method.id == MethodId::weaksym)
        ALFELD_REQUIRE(method.weaksym_disp == DisplacementSpace::wh || method.weaksym_disp == DisplacementSpace::vh,
                       InvalidArgument, "weaksym: displacement space must be W_h or V_h");
    DofTable t;
    t.method = method;
    const int nc = mesh.num_cells();
    t.cell_stress.resize(static_cast<std::size_t>(nc));
    t.cell_disp.resize(static_cast<std::size_t>(nc));
    if (method.id == MethodId::weaksym) {
        t.n_stress = 9 * mesh.conn.fine.num_facets();
        for (int c = 0; c < nc; ++c) {
            auto& cs = t.cell_stress[static_cast<std::size_t>(c)];
            for (int s = 0; s < 4; ++s) {
                const int f = mesh.complex.subcell(c, s);
                for (int m = 0; m < 4; ++m) {
                    const int fid = mesh.conn.fine.cell_facets[static_cast<std::size_t>(f)][static_cast<std::size_t>(m)];
                    for (int l = 0; l < 9; ++l) cs.push_back(fid * 9 + l);
                }
            }
        }
        t.n_rot = kRotationsPerCell * nc;
        t.cell_rot.resize(static_cast<std::size_t>(nc));
        for (int c = 0; c < nc; ++c)
            for (int l = 0; l < kRotationsPerCell; ++l) t.cell_rot[static_cast<std::size_t>(c)].push_back(c * kRotationsPerCell + l);
    } else {
        const StressVariant v = stress_variant(method.id);
        const int fdc = facet_dof_count(v);
        const int cdc = cell_dof_count(v);
        const int nf = mesh.conn.macro.num_facets();
        t.n_stress = fdc * nf + cdc * nc;
        for (int c = 0; c < nc; ++c) {
            auto facets = mesh.conn.macro.cell_facets[static_cast<std::size_t>(c)];
            std::sort(facets.begin(), facets.end());
            auto& cs = t.cell_stress[static_cast<std::size_t>(c)];
            for (int fid : facets)
                for (int l = 0; l < fdc; ++l) cs.push_back(fid * fdc + l);
            for (int l = 0; l < cdc; ++l) cs.push_back(fdc * nf + c * cdc + l);
        }
    }
    const int nd = displacement_dim(displacement_space(method));
    t.n_disp = nd * nc;
    for (int c = 0; c < nc; ++c)
        for (int l = 0; l < nd; ++l) t.cell_disp[static_cast<std::size_t>(c)].push_back(c * nd + l);
    return t;
}

namespace {

// Nodal BDM1 basis (full matrices) on one fine cell: DOFs int_F (S n) . lambda_a e_k.
Eigen::MatrixXd bdm_local_basis(const SplitMesh& mesh, int fine_cell) {
    const auto& cell = mesh.complex.fine.cells[static_cast<std::size_t>(fine_cell)];
    Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(36, 36);
    for (int m = 0; m < 4; ++m) {
        const int fid = mesh.conn.fine.cell_facets[static_cast<std::size_t>(fine_cell)][static_cast<std::size_t>(m)];
        const Facet& f = mesh.conn.fine.facets[static_cast<std::size_t>(fid)];
        std::array<int, 3> slots{};
        for (int a = 0; a < 3; ++a)
            slots[static_cast<std::size_t>(a)] =
                static_cast<int>(std::find(cell.begin(), cell.end(), f.vertices[static_cast<std::size_t>(a)]) - cell.begin());
        for (int a = 0; a < 3; ++a)
            for (int k = 0; k < 3; ++k) {
                const int row = m * 9 + a * 3 + k;
                for (int b = 0; b < 3; ++b) {
                    const double w = f.measure * (a == b ? 2.0 : 1.0) / 12.0;
                    for (int j = 0; j < 3; ++j) dm(row, slots[static_cast<std::size_t>(b)] * 9 + k * 3 + j) += w * f.normal(j);
                }
            }
    }
    return dm.fullPivLu().inverse();
}

}  // namespace

std::shared_ptr<const Discretization> build_discretization(std::shared_ptr<const SplitMesh> mesh,
                                                           const MethodConfig& method) {
    auto d = std::make_shared<Discretization>();
    d->mesh = mesh;
    d->method = method;
    d->table = build_dof_map(*mesh, method);
    const int nc = mesh->num_cells();
    d->geometry.resize(static_cast<std::size_t>(nc));
    parallel_for(0, nc, [&](int c) { d->geometry[static_cast<std::size_t>(c)] = macro_geometry(*mesh, c); });
    if (method.id == MethodId::weaksym) {
        const int nf = mesh->complex.fine.num_cells();
        d->bdm_basis.resize(static_cast<std::size_t>(nf));
        parallel_for(0, nf, [&](int f) { d->bdm_basis[static_cast<std::size_t>(f)] = bdm_local_basis(*mesh, f); });
    } else {
        const StressVariant v = stress_variant(method.id);
        d->stress_raw.resize(static_cast<std::size_t>(nc));
        std::vector<double> smin(static_cast<std::size_t>(nc)), cond(static_cast<std::size_t>(nc));
        parallel_for(0, nc, [&](int c) {
            const auto lb = build_stress_basis(d->geometry[static_cast<std::size_t>(c)], v);
            d->stress_raw[static_cast<std::size_t>(c)] = lb.raw;
            smin[static_cast<std::size_t>(c)] = lb.dof_sigma_min;
            cond[static_cast<std::size_t>(c)] = lb.dof_sigma_max / lb.dof_sigma_min;
        });
        d->min_dof_sigma = *std::min_element(smin.begin(), smin.end());
        d->max_dof_condition = *std::max_element(cond.begin(), cond.end());
    }
    return d;
}

std::array<Eigen::MatrixXd, 4> Discretization::stress_vertex_values(int cell) const {
    if (method.id != MethodId::weaksym) return raw_to_vertex_values(stress_raw[static_cast<std::size_t>(cell)]);
    std::array<Eigen::MatrixXd, 4> out;
    for (int s = 0; s < 4; ++s) {
        auto& m = out[static_cast<std::size_t>(s)];
        m = Eigen::MatrixXd::Zero(36, 4 * kBdmPerSubtet);
        m.middleCols(s * kBdmPerSubtet, kBdmPerSubtet) = bdm_basis[static_cast<std::size_t>(mesh->complex.subcell(cell, s))];
    }
    return out;
}

std::array<Eigen::MatrixXd, 4> displacement_vertex_values(const MacroGeometry& geo, DisplacementSpace space) {
    const int nd = displacement_dim(space);
    std::array<Eigen::MatrixXd, 4> out;
    for (int s = 0; s < 4; ++s) {
        auto& m = out[static_cast<std::size_t>(s)];
        m = Eigen::MatrixXd::Zero(12, nd);
        for (int v = 0; v < 4; ++v) {
            const Vec3& x = geo.sub_vertex[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
            for (int i = 0; i < 3; ++i) {
                const int row = v * 3 + i;
                switch (space) {
                    case DisplacementSpace::vh:
                        for (int j = 0; j < 4; ++j) m(row, j * 3 + i) = (v == s) ? 0.25 : (j == v ? 1.0 : 0.0);
                        break;
                    case DisplacementSpace::wh: m(row, s * 3 + i) = 1.0; break;
                    case DisplacementSpace::rigid:
                        for (int k = 0; k < 6; ++k) m(row, k) = rigid_field(geo, k, x)(i);
                        break;
                    case DisplacementSpace::constant: m(row, i) = 1.0; break;
                }
            }
        }
    }
    return out;
}

std::array<Eigen::MatrixXd, 4> Discretization::disp_vertex_values(int cell) const {
    return displacement_vertex_values(geometry[static_cast<std::size_t>(cell)], displacement_space(method));
}

std::array<Eigen::MatrixXd, 4> Discretization::rot_vertex_values(int /*cell*/) const {
    std::array<Eigen::MatrixXd, 4> out;
    for (int s = 0; s < 4; ++s) {
        auto& m = out[static_cast<std::size_t>(s)];
        m = Eigen::MatrixXd::Zero(36, kRotationsPerCell);
        for (int v = 0; v < 4; ++v)
            for (int k = 0; k < 3; ++k) {
                const Mat3 h = mskw(Vec3::Unit(k));
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) m(v * 9 + i * 3 + j, s * 12 + v * 3 + k) = h(i, j);
            }
    }
    return out;
}

// ---------------------------------------------------------------------------

Mat3 StressField::value(int fine_cell, const std::array<double, 4>& bary) const {
    const auto& vv = v[static_cast<std::size_t>(fine_cell)];
    return bary[0] * vv[0] + bary[1] * vv[1] + bary[2] * vv[2] + bary[3] * vv[3];
}

Vec3 DisplacementField::value(int fine_cell, const std::array<double, 4>& bary) const {
    const auto& vv = v[static_cast<std::size_t>(fine_cell)];
    return bary[0] * vv[0] + bary[1] * vv[1] + bary[2] * vv[2] + bary[3] * vv[3];
}

namespace {

StressField matrix_field_from(const Discretization& d, const Eigen::VectorXd& coeffs, bool rotations) {
    StressField out;
    out.v.resize(static_cast<std::size_t>(d.mesh->complex.fine.num_cells()));
    parallel_for(0, d.num_cells(), [&](int c) {
        const auto vv = rotations ? d.rot_vertex_values(c) : d.stress_vertex_values(c);
        const auto& idx = rotations ? d.table.cell_rot[static_cast<std::size_t>(c)] : d.table.cell_stress[static_cast<std::size_t>(c)];
        Eigen::VectorXd loc(static_cast<Eigen::Index>(idx.size()));
        for (std::size_t l = 0; l < idx.size(); ++l) loc(static_cast<Eigen::Index>(l)) = coeffs(idx[l]);
        for (int s = 0; s < 4; ++s) {
            const Eigen::VectorXd vals = vv[static_cast<std::size_t>(s)] * loc;
            auto& dst = out.v[static_cast<std::size_t>(d.mesh->complex.subcell(c, s))];
            for (int v = 0; v < 4; ++v)
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) dst[static_cast<std::size_t>(v)](i, j) = vals(v * 9 + i * 3 + j);
        }
    });
    return out;
}

}  // namespace

StressField make_stress_field(const Discretization& d, const Eigen::VectorXd& stress) {
    ALFELD_REQUIRE(stress.size() == d.table.n_stress, InvalidArgument, "make_stress_field: coefficient length mismatch");
    return matrix_field_from(d, stress, false);
}

StressField make_rotation_field(const Discretization& d, const Eigen::VectorXd& rot) {
    ALFELD_REQUIRE(rot.size() == d.table.n_rot, InvalidArgument, "make_rotation_field: coefficient length mismatch");
    return matrix_field_from(d, rot, true);
}

DisplacementField make_displacement_field(const Discretization& d, DisplacementSpace space, const Eigen::VectorXd& disp) {
    const int nd = displacement_dim(space);
    ALFELD_REQUIRE(disp.size() == static_cast<Eigen::Index>(nd) * d.num_cells(), InvalidArgument,
                   "make_displacement_field: coefficient length mismatch");
    DisplacementField out;
    out.v.resize(static_cast<std::size_t>(d.mesh->complex.fine.num_cells()));
    parallel_for(0, d.num_cells(), [&](int c) {
        const auto uv = displacement_vertex_values(d.geometry[static_cast<std::size_t>(c)], space);
        const Eigen::VectorXd loc = disp.segment(static_cast<Eigen::Index>(c) * nd, nd);
        for (int s = 0; s < 4; ++s) {
            const Eigen::VectorXd vals = uv[static_cast<std::size_t>(s)] * loc;
            auto& dst = out.v[static_cast<std::size_t>(d.mesh->complex.subcell(c, s))];
            for (int v = 0; v < 4; ++v) dst[static_cast<std::size_t>(v)] = vals.segment(v * 3, 3);
        }
    });
    return out;
}

DisplacementField make_displacement_field(const Discretization& d, const Eigen::VectorXd& disp) {
    return make_displacement_field(d, displacement_space(d.method), disp);
}

Eigen::VectorXd canonical_interpolant(const Discretization& d, const MatrixField& field, int facet_degree, int cell_degree) {
    const StressVariant v = stress_variant(d.method.id);
    std::vector<Eigen::VectorXd> local(static_cast<std::size_t>(d.num_cells()));
    parallel_for(0, d.num_cells(), [&](int c) {
        const auto& geo = d.geometry[static_cast<std::size_t>(c)];
        local[static_cast<std::size_t>(c)] = dof_functionals(geo, dof_descriptors(geo, v), field, facet_degree, cell_degree);
    });
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d.table.n_stress);
    for (int c = 0; c < d.num_cells(); ++c) {
        const auto& idx = d.table.cell_stress[static_cast<std::size_t>(c)];
        for (std::size_t l = 0; l < idx.size(); ++l) out(idx[l]) = local[static_cast<std::size_t>(c)](static_cast<Eigen::Index>(l));
    }
    return out;
}

Eigen::VectorXd l2_projection(const Discretization& d, DisplacementSpace target, const VectorField& f, int degree) {
    const int nd = displacement_dim(target);
    const auto& rule = simplex_rule(3, degree);
    Eigen::VectorXd out(static_cast<Eigen::Index>(nd) * d.num_cells());
    parallel_for(0, d.num_cells(), [&](int c) {
        const auto& geo = d.geometry[static_cast<std::size_t>(c)];
        const auto uv = displacement_vertex_values(geo, target);
        Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(nd, nd);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nd);
        for (int s = 0; s < 4; ++s) {
            const double vol = geo.sub_volume[static_cast<std::size_t>(s)];
            const auto& u = uv[static_cast<std::size_t>(s)];
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    gram += vol * (a == b ? 2.0 : 1.0) / 20.0 * u.middleRows(a * 3, 3).transpose() * u.middleRows(b * 3, 3);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const auto& bq = rule.points[q];
                Vec3 x = Vec3::Zero();
                Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(3, nd);
                for (int v = 0; v < 4; ++v) {
                    x += bq[static_cast<std::size_t>(v)] * geo.sub_vertex[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
                    phi += bq[static_cast<std::size_t>(v)] * u.middleRows(v * 3, 3);
                }
                rhs += 6.0 * vol * rule.weights[q] * phi.transpose() * f(x);
            }
        }
        out.segment(static_cast<Eigen::Index>(c) * nd, nd) = gram.llt().solve(rhs);
    });
    return out;
}

std::vector<Vec3> subtet_divergence(const Discretization& d, const StressField& s) {
    std::vector<Vec3> out(s.v.size(), Vec3::Zero());
    for (int c = 0; c < d.num_cells(); ++c) {
        const auto& geo = d.geometry[static_cast<std::size_t>(c)];
        for (int k = 0; k < 4; ++k) {
            const int f = d.mesh->complex.subcell(c, k);
            Vec3 dv = Vec3::Zero();
            for (int v = 0; v < 4; ++v) dv += s.v[static_cast<std::size_t>(f)][static_cast<std::size_t>(v)] * geo.grad_lambda[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
            out[static_cast<std::size_t>(f)] = dv;
        }
    }
    return out;
}

}  // namespace alfeld
