#include "alfeld/study.hpp"

#include "alfeld/error.hpp"
#include "alfeld/parallel.hpp"
#include "alfeld/quadrature.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace alfeld {

namespace {

Eigen::Matrix<double, 9, 1> vec9(const Mat3& m) {
    Eigen::Matrix<double, 9, 1> v;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v(i * 3 + j) = m(i, j);
    return v;
}

double a_square(const Mat9& a9, const Mat3& m) {
    const auto v = vec9(m);
    return v.dot(a9 * v);
}

struct CellSums {
    double sA = 0, sL2 = 0, u = 0, pu = 0, ustar = 0, piA = 0, interpA = 0;
    double normA = 0, normL2 = 0, trace_exact = 0, trace_h = 0;
    double div_defect = 0;
};

}  // namespace

ErrorRow error_norms(const DiscreteSolution& sol, const ManufacturedCase& exact, const PostprocessedField* post, int n) {
    const Discretization& d = *sol.disc;
    const bool symmetric = d.method.id != MethodId::weaksym;
    const Mat9& a9 = sol.material.matrix9();
    const StressField sh = sol.stress_field();
    const DisplacementField uh = sol.disp_field();
    std::optional<StressField> pi;
    std::vector<Vec3> div_pi, div_h;
    if (symmetric) {
        pi = make_stress_field(d, canonical_interpolant(d, exact.sigma));
        div_pi = subtet_divergence(d, *pi);
        div_h = subtet_divergence(d, sh);
    }
    const auto& rule = simplex_rule(3, 6);
    std::vector<CellSums> sums(static_cast<std::size_t>(d.num_cells()));
    parallel_for(0, d.num_cells(), [&](int c) {
        const auto& geo = d.geometry[static_cast<std::size_t>(c)];
        CellSums& cs = sums[static_cast<std::size_t>(c)];
        for (int s = 0; s < 4; ++s) {
            const int fine = d.mesh->complex.subcell(c, s);
            const double vol = geo.sub_volume[static_cast<std::size_t>(s)];
            Vec3 mean_u = Vec3::Zero();
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const auto& bq = rule.points[q];
                const std::array<double, 4> bary{bq[0], bq[1], bq[2], bq[3]};
                Vec3 x = Vec3::Zero();
                for (int v = 0; v < 4; ++v) x += bary[static_cast<std::size_t>(v)] * geo.sub_vertex[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
                const double w = 6.0 * vol * rule.weights[q];
                const Mat3 se = exact.sigma(x);
                const Mat3 sv = sh.value(fine, bary);
                const Vec3 ue = exact.u(x);
                cs.sA += w * a_square(a9, se - sv);
                cs.sL2 += w * (se - sv).squaredNorm();
                cs.normA += w * a_square(a9, se);
                cs.normL2 += w * se.squaredNorm();
                cs.trace_exact += w * se.trace();
                cs.trace_h += w * sv.trace();
                cs.u += w * (ue - uh.value(fine, bary)).squaredNorm();
                mean_u += 6.0 * rule.weights[q] * ue;
                if (post) cs.ustar += w * (ue - post->value(c, x)).squaredNorm();
                if (pi) {
                    const Mat3 pv = pi->value(fine, bary);
                    cs.piA += w * a_square(a9, pv - sv);
                    cs.interpA += w * a_square(a9, pv - se);
                }
            }
            const auto& vv = uh.v[static_cast<std::size_t>(fine)];
            const Vec3 mean_h = 0.25 * (vv[0] + vv[1] + vv[2] + vv[3]);
            cs.pu += vol * (mean_u - mean_h).squaredNorm();
            if (pi)
                cs.div_defect = std::max(cs.div_defect,
                                         (div_pi[static_cast<std::size_t>(fine)] - div_h[static_cast<std::size_t>(fine)]).cwiseAbs().maxCoeff());
        }
    });
    CellSums tot;
    for (const auto& cs : sums) {
        tot.sA += cs.sA;
        tot.sL2 += cs.sL2;
        tot.u += cs.u;
        tot.pu += cs.pu;
        tot.ustar += cs.ustar;
        tot.piA += cs.piA;
        tot.interpA += cs.interpA;
        tot.normA += cs.normA;
        tot.normL2 += cs.normL2;
        tot.trace_exact += cs.trace_exact;
        tot.trace_h += cs.trace_h;
        tot.div_defect = std::max(tot.div_defect, cs.div_defect);
    }
    ErrorRow r;
    r.n = n;
    for (const auto& g : d.geometry) r.h = std::max(r.h, g.diameter);
    r.ndof_sigma = d.table.n_stress;
    r.ndof_u = d.table.n_disp;
    r.err_sigma_A = std::sqrt(tot.sA);
    r.err_sigma_L2 = std::sqrt(tot.sL2);
    r.err_u_L2 = std::sqrt(tot.u);
    r.err_Pu_L2 = std::sqrt(tot.pu);
    if (post) r.err_ustar_L2 = std::sqrt(tot.ustar);
    r.norm_sigma_A = std::sqrt(tot.normA);
    r.norm_sigma_L2 = std::sqrt(tot.normL2);
    const double scale = r.norm_sigma_L2 > 0.0 ? r.norm_sigma_L2 : 1.0;
    r.mean_trace_defect = std::abs(tot.trace_exact - tot.trace_h) / scale;
    if (pi) {
        r.err_Pi_sigma_A = std::sqrt(tot.piA);
        r.interp_sigma_A = std::sqrt(tot.interpA);
        r.div_Pi_defect = tot.div_defect / scale;
    }
    r.solver_residual = sol.info.residual;
    return r;
}

std::optional<double> observed_rate(double e_prev, double e, double h_prev, double h) {
    if (!(e_prev > 1e-14 && e > 1e-14) || h_prev <= h) return std::nullopt;
    return std::log(e_prev / e) / std::log(h_prev / h);
}

void fill_rates(std::vector<ErrorRow>& rows) {
    auto opt_rate = [](const std::optional<double>& a, const std::optional<double>& b, double ha, double hb) {
        return (a && b) ? observed_rate(*a, *b, ha, hb) : std::nullopt;
    };
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const ErrorRow& p = rows[k - 1];
        ErrorRow& r = rows[k];
        r.rate_sigma_A = observed_rate(p.err_sigma_A, r.err_sigma_A, p.h, r.h);
        r.rate_u = observed_rate(p.err_u_L2, r.err_u_L2, p.h, r.h);
        r.rate_Pu = observed_rate(p.err_Pu_L2, r.err_Pu_L2, p.h, r.h);
        r.rate_ustar = opt_rate(p.err_ustar_L2, r.err_ustar_L2, p.h, r.h);
        r.rate_Pi_sigma_A = opt_rate(p.err_Pi_sigma_A, r.err_Pi_sigma_A, p.h, r.h);
    }
}

StudyResult convergence_study(const StudyConfig& config) {
    for (std::size_t k = 1; k < config.levels.size(); ++k)
        ALFELD_REQUIRE(config.levels[k] > config.levels[k - 1], InvalidArgument, "levels must be strictly increasing");
    ALFELD_REQUIRE(!config.levels.empty() && config.levels.front() >= 1, InvalidArgument, "levels must be >= 1");
    const ComplianceTensor material = parse_material(config.material);
    const ManufacturedCase mc = manufactured_case(material, config.case_id);
    const bool post = config.postprocess && config.method.id != MethodId::weaksym;
    StudyResult res;
    int level = 0;
    for (int n : config.levels) {
        try {
            auto mesh = std::make_shared<const SplitMesh>(generate_cube_mesh(n));
            const auto sol = run_method(mesh, config.method, material, load_from(mc.f), mc.zero_boundary ? nullptr : &mc.u);
            std::optional<PostprocessedField> pf;
            if (post) pf = postprocess_displacement(sol);
            ErrorRow row = error_norms(sol, mc, pf ? &*pf : nullptr, n);
            row.level = level++;
            res.rows.push_back(row);
        } catch (const Error& e) {
            res.complete = false;
            std::ostringstream os;
            os << "level n=" << n << ": " << e.what();
            res.failure = os.str();
            break;
        }
    }
    fill_rates(res.rows);
    return res;
}

const char* const kCsvHeader =
    "level,n,h,ndof_sigma,ndof_u,err_sigma_A,err_sigma_L2,err_u_L2,err_Pu_L2,err_ustar_L2,err_Pi_sigma_A,"
    "rate_sigma_A,rate_u,rate_Pu,rate_ustar";

void write_csv(std::ostream& out, const StudyResult& result) {
    out << kCsvHeader << "\n";
    std::ostringstream os;
    os << std::scientific << std::setprecision(10);
    auto opt = [&](const std::optional<double>& v) {
        if (v) os << *v;
    };
    for (const auto& r : result.rows) {
        os << r.level << ',' << r.n << ',' << r.h << ',' << r.ndof_sigma << ',' << r.ndof_u << ',' << r.err_sigma_A << ','
           << r.err_sigma_L2 << ',' << r.err_u_L2 << ',' << r.err_Pu_L2 << ',';
        opt(r.err_ustar_L2);
        os << ',';
        opt(r.err_Pi_sigma_A);
        os << ',';
        opt(r.rate_sigma_A);
        os << ',';
        opt(r.rate_u);
        os << ',';
        opt(r.rate_Pu);
        os << ',';
        opt(r.rate_ustar);
        os << '\n';
    }
    if (!result.complete) os << "# INCOMPLETE: " << result.failure << '\n';
    out << os.str();
}

// ---------------------------------------------------------------------------

const RobustnessEntry& RobustnessResult::entry(double nu, int n) const {
    for (const auto& e : entries)
        if (e.nu == nu && e.n == n) return e;
    throw InvalidArgument("robustness: no entry for the requested (nu, n)");
}

double RobustnessResult::ratio(double nu, int n) const {
    return entry(nu, n).err_sigma_L2 / entry(nus.front(), n).err_sigma_L2;
}

std::string RobustnessResult::text() const {
    std::ostringstream os;
    os << "robustness " << describe(method) << " (divergence-free case, E = 1)\n";
    os << std::setw(10) << "nu" << std::setw(5) << "n" << std::setw(14) << "err_sigma_L2" << std::setw(14) << "err_sigma_A"
       << std::setw(10) << "rate_L2" << std::setw(10) << "rate_A" << std::setw(10) << "ratio" << "\n";
    for (const auto& e : entries) {
        os << std::setw(10) << std::setprecision(6) << std::defaultfloat << e.nu << std::setw(5) << e.n << std::scientific
           << std::setprecision(4) << std::setw(14) << e.err_sigma_L2 << std::setw(14) << e.err_sigma_A << std::fixed
           << std::setprecision(3);
        os << std::setw(10);
        if (e.rate_sigma_L2) os << *e.rate_sigma_L2; else os << "-";
        os << std::setw(10);
        if (e.rate_sigma_A) os << *e.rate_sigma_A; else os << "-";
        os << std::setw(10) << ratio(e.nu, e.n) << "\n";
    }
    return os.str();
}

RobustnessResult robustness_study(const MethodConfig& method, const std::vector<int>& levels, const std::vector<double>& nus) {
    ALFELD_REQUIRE(!nus.empty() && !levels.empty(), InvalidArgument, "robustness: empty nu or level list");
    RobustnessResult res;
    res.method = method;
    res.nus = nus;
    res.levels = levels;
    for (double nu : nus) {
        ALFELD_REQUIRE(nu > -1.0 && nu < 0.5, InvalidArgument, "robustness: nu must lie in (-1, 1/2)");
        const auto lame = lame_from_young(1.0, nu);
        const auto material = ComplianceTensor::isotropic(lame.lambda, lame.mu);
        const auto mc = manufactured_case(material, "divfree");
        std::vector<ErrorRow> rows;
        for (int n : levels) {
            auto mesh = std::make_shared<const SplitMesh>(generate_cube_mesh(n));
            const auto sol = run_method(mesh, method, material, load_from(mc.f));
            rows.push_back(error_norms(sol, mc, nullptr, n));
        }
        for (std::size_t k = 0; k < rows.size(); ++k) {
            RobustnessEntry e;
            e.nu = nu;
            e.n = rows[k].n;
            e.err_sigma_L2 = rows[k].err_sigma_L2;
            e.err_sigma_A = rows[k].err_sigma_A;
            if (k > 0) {
                e.rate_sigma_L2 = observed_rate(rows[k - 1].err_sigma_L2, rows[k].err_sigma_L2, rows[k - 1].h, rows[k].h);
                e.rate_sigma_A = observed_rate(rows[k - 1].err_sigma_A, rows[k].err_sigma_A, rows[k - 1].h, rows[k].h);
            }
            res.entries.push_back(e);
        }
    }
    return res;
}

// ---------------------------------------------------------------------------

std::vector<WhLoadRow> wh_load_experiment(const std::vector<int>& levels, int refinements, const std::string& material_spec) {
    ALFELD_REQUIRE(refinements >= 0, InvalidArgument, "wh_load_experiment: refinements must be >= 0");
    const ComplianceTensor material = parse_material(material_spec);
    const ManufacturedCase mc = manufactured_case(material, "trig");
    MethodConfig p0;
    p0.id = MethodId::p0;
    int children = 1;
    for (int k = 0; k < refinements; ++k) children *= 8;

    std::vector<WhLoadRow> rows;
    for (int n : levels) {
        auto mesh = std::make_shared<const SplitMesh>(generate_cube_mesh(n));
        auto disc = build_discretization(mesh, p0);
        const Eigen::VectorXd fn = project_load_wh(*disc, load_from(mc.f));
        const LoadField coarse_load = [&fn](int fine, const Vec3&) { return Vec3(fn.segment(3 * fine, 3)); };
        const auto coarse = run_method(disc, material, coarse_load);

        SimplexMesh ref_mesh = mesh->complex.fine;
        for (int k = 0; k < refinements; ++k) ref_mesh = refine_red(ref_mesh);
        auto ref_split = std::make_shared<const SplitMesh>(ref_mesh);
        const LoadField ref_load = [&fn, children](int fine, const Vec3&) {
            const int coarse_fine = (fine / 4) / children;
            return Vec3(fn.segment(3 * coarse_fine, 3));
        };
        const auto ref = run_method(ref_split, p0, material, ref_load);

        // Coarse-subtet means of the reference displacement.
        const int ncf = mesh->complex.fine.num_cells();
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(3 * ncf);
        Eigen::VectorXd vol = Eigen::VectorXd::Zero(ncf);
        for (int r = 0; r < ref_split->num_cells(); ++r) {
            const int cf = r / children;
            const Eigen::VectorXd m = subtet_means(ref, r);
            const auto& g = ref.disc->geometry[static_cast<std::size_t>(r)];
            for (int s = 0; s < 4; ++s) {
                acc.segment(3 * cf, 3) += g.sub_volume[static_cast<std::size_t>(s)] * m.segment(3 * s, 3);
                vol(cf) += g.sub_volume[static_cast<std::size_t>(s)];
            }
        }
        double err = 0.0;
        for (int c = 0; c < mesh->num_cells(); ++c) {
            const Eigen::VectorXd m = subtet_means(coarse, c);
            for (int s = 0; s < 4; ++s) {
                const int cf = mesh->complex.subcell(c, s);
                const Vec3 diff = acc.segment(3 * cf, 3) / vol(cf) - m.segment(3 * s, 3);
                err += vol(cf) * diff.squaredNorm();
            }
        }
        WhLoadRow row;
        row.n = n;
        for (const auto& g : disc->geometry) row.h = std::max(row.h, g.diameter);
        row.reference_cells = ref_split->num_cells();
        row.err_P = std::sqrt(err);
        if (!rows.empty()) row.rate = observed_rate(rows.back().err_P, row.err_P, rows.back().h, row.h);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace alfeld
