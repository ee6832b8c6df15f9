#include "alfeld/postprocess.hpp"

#include "alfeld/error.hpp"
#include "alfeld/parallel.hpp"
#include "alfeld/quadrature.hpp"

#include <sstream>

namespace alfeld {

Vec3 PostprocessedField::value(int cell, const Vec3& x) const {
    return p2_value(disc->geometry[static_cast<std::size_t>(cell)], coeffs[static_cast<std::size_t>(cell)], x);
}

Eigen::VectorXd subtet_means(const DiscreteSolution& sol, int cell) {
    const auto uv = sol.disc->disp_vertex_values(cell);
    const auto& idx = sol.disc->table.cell_disp[static_cast<std::size_t>(cell)];
    Eigen::VectorXd loc(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t l = 0; l < idx.size(); ++l) loc(static_cast<Eigen::Index>(l)) = sol.disp(idx[l]);
    Eigen::VectorXd out(12);
    for (int s = 0; s < 4; ++s) {
        const Eigen::VectorXd vals = uv[static_cast<std::size_t>(s)] * loc;
        out.segment(s * 3, 3) = 0.25 * (vals.segment(0, 3) + vals.segment(3, 3) + vals.segment(6, 3) + vals.segment(9, 3));
    }
    return out;
}

PostprocessSystem postprocess_system(const DiscreteSolution& sol, int cell) {
    const Discretization& d = *sol.disc;
    ALFELD_REQUIRE(d.method.id != MethodId::weaksym, InvalidArgument,
                   "postprocess: needs a symmetric-stress method");
    const auto& geo = d.geometry[static_cast<std::size_t>(cell)];
    const ShBasis sh = sh_basis(geo);
    const RigidOps ro = rigid_ops(geo);
    const auto gl = macro_grad_lambda(geo);
    const Mat9& a9 = sol.material.matrix9();
    const auto sv = d.stress_vertex_values(cell);
    const auto& idx = d.table.cell_stress[static_cast<std::size_t>(cell)];
    Eigen::VectorXd sloc(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t l = 0; l < idx.size(); ++l) sloc(static_cast<Eigen::Index>(l)) = sol.stress(idx[l]);

    Eigen::MatrixXd keps = Eigen::MatrixXd::Zero(30, 30);
    Eigen::VectorXd feps = Eigen::VectorXd::Zero(30);
    Eigen::MatrixXd means = Eigen::MatrixXd::Zero(12, 30);  // subtet means of the 30 basis fields
    const auto& rule = simplex_rule(3, 4);
    for (int s = 0; s < 4; ++s) {
        const double vol = geo.sub_volume[static_cast<std::size_t>(s)];
        const Eigen::VectorXd svals = sv[static_cast<std::size_t>(s)] * sloc;  // 36 vertex entries
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const auto& bq = rule.points[q];
            Vec3 x = Vec3::Zero();
            Eigen::Matrix<double, 9, 1> sig = Eigen::Matrix<double, 9, 1>::Zero();
            for (int v = 0; v < 4; ++v) {
                x += bq[static_cast<std::size_t>(v)] * geo.sub_vertex[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
                sig += bq[static_cast<std::size_t>(v)] * svals.segment(v * 9, 9);
            }
            const auto lam = geo.macro_bary(x);
            const auto b = bernstein2(lam);
            const auto g = bernstein2_grad(lam, gl);
            // eps(phi_{beta,i}) as 9-vectors
            Eigen::Matrix<double, 9, 30> eps = Eigen::Matrix<double, 9, 30>::Zero();
            for (int beta = 0; beta < 10; ++beta)
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        const double gj = 0.5 * g[static_cast<std::size_t>(beta)](j);
                        eps(i * 3 + j, beta * 3 + i) += gj;
                        eps(j * 3 + i, beta * 3 + i) += gj;
                    }
            const double w = 6.0 * vol * rule.weights[q];
            keps.noalias() += w * eps.transpose() * eps;
            feps.noalias() += w * eps.transpose() * (a9 * sig);
            for (int beta = 0; beta < 10; ++beta)
                for (int i = 0; i < 3; ++i) means(s * 3 + i, beta * 3 + i) += 6.0 * rule.weights[q] * b[static_cast<std::size_t>(beta)];
        }
    }
    Eigen::MatrixXd vw = ro.ptr_w;  // 12 x 6, weighted by subtet volumes below
    for (int s = 0; s < 4; ++s) vw.middleRows(s * 3, 3) *= geo.sub_volume[static_cast<std::size_t>(s)];
    const Eigen::VectorXd pu = subtet_means(sol, cell);

    PostprocessSystem ps;
    ps.matrix.resize(30, 30);
    ps.rhs.resize(30);
    ps.matrix.topRows(24) = sh.basis.transpose() * keps;
    ps.rhs.head(24) = sh.basis.transpose() * feps;
    ps.matrix.bottomRows(6) = vw.transpose() * means;
    ps.rhs.tail(6) = vw.transpose() * pu;
    return ps;
}

PostprocessedField postprocess_displacement(const DiscreteSolution& sol) {
    PostprocessedField out;
    out.disc = sol.disc;
    const int nc = sol.disc->num_cells();
    out.coeffs.resize(static_cast<std::size_t>(nc));
    std::vector<double> res(static_cast<std::size_t>(nc), 0.0);
    parallel_for(0, nc, [&](int c) {
        const auto ps = postprocess_system(sol, c);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(ps.matrix);
        if (!lu.isInvertible()) {
            std::ostringstream os;
            os << "postprocess: singular local system on cell " << c;
            throw NumericalError(os.str());
        }
        const Eigen::VectorXd x = lu.solve(ps.rhs);
        const double scale = std::max(ps.rhs.norm(), ps.matrix.norm() * x.norm());
        res[static_cast<std::size_t>(c)] = scale > 0.0 ? (ps.matrix * x - ps.rhs).norm() / scale : 0.0;
        out.coeffs[static_cast<std::size_t>(c)] = x;
    });
    for (double r : res) out.max_residual = std::max(out.max_residual, r);
    return out;
}

}  // namespace alfeld
