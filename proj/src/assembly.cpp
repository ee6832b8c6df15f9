#include "alfeld/assembly.hpp"

#include "alfeld/error.hpp"
#include "alfeld/parallel.hpp"
#include "alfeld/quadrature.hpp"

#include <algorithm>

namespace alfeld {

LoadField load_from(const VectorField& f) {
    return [f](int, const Vec3& x) { return f(x); };
}

Mat9 method_compliance(const MethodConfig& m, const ComplianceTensor& material) {
    if (m.id != MethodId::weaksym) return material.matrix9();
    return material.extended9(m.skew_scale / (2.0 * material.reference_mu()));
}

Eigen::Matrix<double, 3, 36> divergence_operator(const MacroGeometry& geo, int s) {
    Eigen::Matrix<double, 3, 36> d = Eigen::Matrix<double, 3, 36>::Zero();
    for (int v = 0; v < 4; ++v) {
        const Vec3& g = geo.grad_lambda[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) d(i, v * 9 + i * 3 + j) = g(j);
    }
    return d;
}

Eigen::MatrixXd p1_mass(double volume, const Eigen::MatrixXd& X, const Eigen::MatrixXd& W, const Eigen::MatrixXd& Y,
                        int block) {
    // Sum of vertex values weighted as (sum_a X_a)^T W (sum_b Y_b) + sum_a X_a^T W Y_a.
    Eigen::MatrixXd xs = Eigen::MatrixXd::Zero(block, X.cols());
    Eigen::MatrixXd ys = Eigen::MatrixXd::Zero(block, Y.cols());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(X.cols(), Y.cols());
    for (int a = 0; a < 4; ++a) {
        xs += X.middleRows(a * block, block);
        ys += Y.middleRows(a * block, block);
        out.noalias() += X.middleRows(a * block, block).transpose() * W * Y.middleRows(a * block, block);
    }
    out.noalias() += xs.transpose() * W * ys;
    return (volume / 20.0) * out;
}

namespace {

Eigen::Matrix<double, 3, 12> mean_operator() {
    Eigen::Matrix<double, 3, 12> e = Eigen::Matrix<double, 3, 12>::Zero();
    for (int v = 0; v < 4; ++v) e.block<3, 3>(0, v * 3) = 0.25 * Mat3::Identity();
    return e;
}

}  // namespace

LocalMatrices local_matrices(const Discretization& d, const ComplianceTensor& material, int cell, const LoadField* f,
                             const VectorField* boundary_u) {
    const auto& geo = d.geometry[static_cast<std::size_t>(cell)];
    const auto sv = d.stress_vertex_values(cell);
    const auto uv = d.disp_vertex_values(cell);
    const bool weak = d.method.id == MethodId::weaksym;
    const Mat9 a9 = method_compliance(d.method, material);
    const auto ebar = mean_operator();
    const Eigen::Index ns = sv[0].cols();
    const Eigen::Index nd = uv[0].cols();

    LocalMatrices lm;
    lm.M = Eigen::MatrixXd::Zero(ns, ns);
    lm.B = Eigen::MatrixXd::Zero(nd, ns);
    lm.F = Eigen::VectorXd::Zero(nd);
    lm.G = Eigen::VectorXd::Zero(ns);
    std::array<Eigen::MatrixXd, 4> rv;
    if (weak) {
        rv = d.rot_vertex_values(cell);
        lm.C = Eigen::MatrixXd::Zero(kRotationsPerCell, ns);
    }
    const Eigen::MatrixXd a9d = a9;
    const Eigen::MatrixXd id9 = Eigen::MatrixXd::Identity(9, 9);
    for (int s = 0; s < 4; ++s) {
        const double vol = geo.sub_volume[static_cast<std::size_t>(s)];
        const auto& S = sv[static_cast<std::size_t>(s)];
        const auto& U = uv[static_cast<std::size_t>(s)];
        lm.M += p1_mass(vol, S, a9d, S, 9);
        lm.B.noalias() += vol * (ebar * U).transpose() * (divergence_operator(geo, s) * S);
        if (weak) lm.C += p1_mass(vol, rv[static_cast<std::size_t>(s)], id9, S, 9);
    }
    lm.M = 0.5 * (lm.M + lm.M.transpose());

    if (f) {
        const auto& rule = simplex_rule(3, 6);
        for (int s = 0; s < 4; ++s) {
            const double vol = geo.sub_volume[static_cast<std::size_t>(s)];
            const auto& U = uv[static_cast<std::size_t>(s)];
            const int fine = d.mesh->complex.subcell(cell, s);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                Vec3 x = Vec3::Zero();
                Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(3, nd);
                for (int v = 0; v < 4; ++v) {
                    const double b = rule.points[q][static_cast<std::size_t>(v)];
                    x += b * geo.sub_vertex[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
                    phi += b * U.middleRows(v * 3, 3);
                }
                lm.F.noalias() += 6.0 * vol * rule.weights[q] * phi.transpose() * (*f)(fine, x);
            }
        }
    }

    if (boundary_u) {
        const auto& rule = simplex_rule(2, 5);
        for (int m = 0; m < 4; ++m) {
            const Facet& fc = d.mesh->conn.macro.facets[static_cast<std::size_t>(geo.facet_id[static_cast<std::size_t>(m)])];
            if (fc.cells[1] >= 0) continue;
            // Macro facet m is the facet of subtet m opposite its slot m.
            const auto& S = sv[static_cast<std::size_t>(m)];
            const Vec3& n = geo.facet_normal[static_cast<std::size_t>(m)];
            std::array<int, 3> slots{};
            for (int v = 0, k = 0; v < 4; ++v)
                if (v != m) slots[static_cast<std::size_t>(k++)] = v;
            for (std::size_t q = 0; q < rule.size(); ++q) {
                Vec3 x = Vec3::Zero();
                Eigen::MatrixXd tn = Eigen::MatrixXd::Zero(3, ns);
                for (int a = 0; a < 3; ++a) {
                    const double b = rule.points[q][static_cast<std::size_t>(a)];
                    const int v = slots[static_cast<std::size_t>(a)];
                    x += b * geo.sub_vertex[static_cast<std::size_t>(m)][static_cast<std::size_t>(v)];
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) tn.row(i) += b * n(j) * S.row(v * 9 + i * 3 + j);
                }
                lm.G.noalias() += 2.0 * geo.facet_area[static_cast<std::size_t>(m)] * rule.weights[q] * tn.transpose() * (*boundary_u)(x);
            }
        }
    }
    return lm;
}

namespace {

constexpr int kChunk = 256;

template <class Local, class Emit>
void chunked_cells(int ncells, const Local& local, const Emit& emit) {
    using Result = decltype(local(0));
    for (int begin = 0; begin < ncells; begin += kChunk) {
        const int end = std::min(ncells, begin + kChunk);
        std::vector<Result> buf(static_cast<std::size_t>(end - begin));
        parallel_for(begin, end, [&](int c) { buf[static_cast<std::size_t>(c - begin)] = local(c); });
        for (int c = begin; c < end; ++c) emit(c, buf[static_cast<std::size_t>(c - begin)]);
    }
}

void add_block(std::vector<Eigen::Triplet<double>>& t, const Eigen::MatrixXd& a, const std::vector<int>& rows, int roff,
               const std::vector<int>& cols, int coff, bool with_transpose) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const double v = a(i, j);
            if (v == 0.0) continue;
            const int r = roff + rows[static_cast<std::size_t>(i)];
            const int c = coff + cols[static_cast<std::size_t>(j)];
            t.emplace_back(r, c, v);
            if (with_transpose) t.emplace_back(c, r, v);
        }
}

}  // namespace

AssembledSystem assemble(const Discretization& d, const ComplianceTensor& material, const LoadField& f,
                         const VectorField* boundary_u) {
    const DofTable& t = d.table;
    ALFELD_REQUIRE(static_cast<int>(t.cell_stress.size()) == d.num_cells(), InvalidArgument,
                   "assemble: DOF table does not match the mesh");
    AssembledSystem out;
    out.system.dim = t.size();
    out.rhs = Eigen::VectorXd::Zero(t.size());
    std::vector<Eigen::Triplet<double>> trip;
    const LoadField* fp = f ? &f : nullptr;
    chunked_cells(
        d.num_cells(), [&](int c) { return local_matrices(d, material, c, fp, boundary_u); },
        [&](int c, const LocalMatrices& lm) {
            const auto& cs = t.cell_stress[static_cast<std::size_t>(c)];
            const auto& cd = t.cell_disp[static_cast<std::size_t>(c)];
            add_block(trip, lm.M, cs, 0, cs, 0, false);
            add_block(trip, lm.B, cd, t.disp_offset(), cs, 0, true);
            if (t.n_rot > 0) add_block(trip, lm.C, t.cell_rot[static_cast<std::size_t>(c)], t.rot_offset(), cs, 0, true);
            for (std::size_t l = 0; l < cs.size(); ++l) out.rhs(cs[l]) += lm.G(static_cast<Eigen::Index>(l));
            for (std::size_t l = 0; l < cd.size(); ++l) out.rhs(t.disp_offset() + cd[l]) += lm.F(static_cast<Eigen::Index>(l));
        });
    out.system.matrix.resize(t.size(), t.size());
    out.system.matrix.setFromTriplets(trip.begin(), trip.end());
    out.system.matrix.makeCompressed();
    out.system.symmetric = true;
    return out;
}

StressGrams stress_grams(const Discretization& d) {
    const DofTable& t = d.table;
    std::vector<Eigen::Triplet<double>> tl, td;
    const Eigen::MatrixXd id9 = Eigen::MatrixXd::Identity(9, 9);
    struct Pair {
        Eigen::MatrixXd l2, dv;
    };
    chunked_cells(
        d.num_cells(),
        [&](int c) {
            const auto& geo = d.geometry[static_cast<std::size_t>(c)];
            const auto sv = d.stress_vertex_values(c);
            Pair p;
            p.l2 = Eigen::MatrixXd::Zero(sv[0].cols(), sv[0].cols());
            p.dv = p.l2;
            for (int s = 0; s < 4; ++s) {
                const double vol = geo.sub_volume[static_cast<std::size_t>(s)];
                p.l2 += p1_mass(vol, sv[static_cast<std::size_t>(s)], id9, sv[static_cast<std::size_t>(s)], 9);
                const Eigen::MatrixXd ds = divergence_operator(geo, s) * sv[static_cast<std::size_t>(s)];
                p.dv.noalias() += vol * ds.transpose() * ds;
            }
            return p;
        },
        [&](int c, const Pair& p) {
            const auto& cs = t.cell_stress[static_cast<std::size_t>(c)];
            add_block(tl, p.l2, cs, 0, cs, 0, false);
            add_block(td, p.dv, cs, 0, cs, 0, false);
        });
    StressGrams g;
    g.l2.resize(t.n_stress, t.n_stress);
    g.div.resize(t.n_stress, t.n_stress);
    g.l2.setFromTriplets(tl.begin(), tl.end());
    g.div.setFromTriplets(td.begin(), td.end());
    return g;
}

SparseMatrix displacement_mass(const Discretization& d) {
    const DofTable& t = d.table;
    std::vector<Eigen::Triplet<double>> trip;
    const Eigen::MatrixXd id3 = Eigen::MatrixXd::Identity(3, 3);
    chunked_cells(
        d.num_cells(),
        [&](int c) {
            const auto& geo = d.geometry[static_cast<std::size_t>(c)];
            const auto uv = d.disp_vertex_values(c);
            Eigen::MatrixXd m = Eigen::MatrixXd::Zero(uv[0].cols(), uv[0].cols());
            for (int s = 0; s < 4; ++s)
                m += p1_mass(geo.sub_volume[static_cast<std::size_t>(s)], uv[static_cast<std::size_t>(s)], id3,
                             uv[static_cast<std::size_t>(s)], 3);
            return m;
        },
        [&](int c, const Eigen::MatrixXd& m) {
            const auto& cd = t.cell_disp[static_cast<std::size_t>(c)];
            add_block(trip, m, cd, 0, cd, 0, false);
        });
    SparseMatrix out(t.n_disp, t.n_disp);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

}  // namespace alfeld
