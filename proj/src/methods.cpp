#include "alfeld/methods.hpp"

#include "alfeld/quadrature.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace alfeld {

DiscreteSolution run_method(std::shared_ptr<const Discretization> disc, const ComplianceTensor& material,
                            const LoadField& f, const VectorField* boundary_u) {
    const auto sys = assemble(*disc, material, f, boundary_u);
    DiscreteSolution sol;
    sol.disc = disc;
    sol.material = material;
    const Eigen::VectorXd x = solve(sys.system, sys.rhs, &sol.info);
    const DofTable& t = disc->table;
    sol.stress = x.head(t.n_stress);
    sol.disp = x.segment(t.disp_offset(), t.n_disp);
    sol.rot = x.segment(t.rot_offset(), t.n_rot);
    return sol;
}

DiscreteSolution run_method(std::shared_ptr<const SplitMesh> mesh, const MethodConfig& method,
                            const ComplianceTensor& material, const LoadField& f, const VectorField* boundary_u) {
    return run_method(build_discretization(std::move(mesh), method), material, f, boundary_u);
}

namespace {

// int_K |p|^2 for a P1 field with vertex values p_v: |K|/20 (sum |p_v|^2 + |sum p_v|^2).
template <class V>
double p1_square(double vol, const std::array<V, 4>& p) {
    V sum = p[0] + p[1] + p[2] + p[3];
    double acc = sum.squaredNorm();
    for (const auto& x : p) acc += x.squaredNorm();
    return vol / 20.0 * acc;
}

template <class Field, class Map>
double field_square(const Discretization& d, const Field& a, const Map& map) {
    double acc = 0.0;
    for (int c = 0; c < d.num_cells(); ++c)
        for (int s = 0; s < 4; ++s) {
            const int f = d.mesh->complex.subcell(c, s);
            acc += p1_square(d.geometry[static_cast<std::size_t>(c)].sub_volume[static_cast<std::size_t>(s)],
                             map(a.v[static_cast<std::size_t>(f)], f));
        }
    return acc;
}

}  // namespace

double l2_norm(const Discretization& d, const StressField& s) {
    return std::sqrt(field_square(d, s, [](const std::array<Mat3, 4>& v, int) { return v; }));
}

double l2_distance(const Discretization& d, const StressField& a, const StressField& b) {
    return std::sqrt(field_square(d, a, [&](const std::array<Mat3, 4>& v, int f) {
        std::array<Mat3, 4> out;
        for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k)] - b.v[static_cast<std::size_t>(f)][static_cast<std::size_t>(k)];
        return out;
    }));
}

double l2_norm(const Discretization& d, const DisplacementField& u) {
    return std::sqrt(field_square(d, u, [](const std::array<Vec3, 4>& v, int) { return v; }));
}

double l2_distance(const Discretization& d, const DisplacementField& a, const DisplacementField& b) {
    return std::sqrt(field_square(d, a, [&](const std::array<Vec3, 4>& v, int f) {
        std::array<Vec3, 4> out;
        for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k)] - b.v[static_cast<std::size_t>(f)][static_cast<std::size_t>(k)];
        return out;
    }));
}

double relative_skew_norm(const Discretization& d, const StressField& s) {
    const double total = l2_norm(d, s);
    if (total == 0.0) return 0.0;
    const double skew = std::sqrt(field_square(d, s, [](const std::array<Mat3, 4>& v, int) {
        std::array<Mat3, 4> out;
        for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(k)] = 0.5 * (v[static_cast<std::size_t>(k)] - v[static_cast<std::size_t>(k)].transpose());
        return out;
    }));
    return skew / total;
}

Eigen::VectorXd project_load_wh(const Discretization& d, const LoadField& f, int degree) {
    const auto& rule = simplex_rule(3, degree);
    const int nf = d.mesh->complex.fine.num_cells();
    Eigen::VectorXd out(3 * nf);
    for (int c = 0; c < d.num_cells(); ++c) {
        const auto& geo = d.geometry[static_cast<std::size_t>(c)];
        for (int s = 0; s < 4; ++s) {
            const int fine = d.mesh->complex.subcell(c, s);
            Vec3 acc = Vec3::Zero();
            for (std::size_t q = 0; q < rule.size(); ++q) {
                Vec3 x = Vec3::Zero();
                for (int v = 0; v < 4; ++v) x += rule.points[q][static_cast<std::size_t>(v)] * geo.sub_vertex[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
                acc += 6.0 * rule.weights[q] * f(fine, x);
            }
            out.segment(3 * fine, 3) = acc;
        }
    }
    return out;
}

EquilibriumDefect equilibrium_defect(const DiscreteSolution& sol, const LoadField& f) {
    const Discretization& d = *sol.disc;
    const auto div = subtet_divergence(d, sol.stress_field());
    const Eigen::VectorXd pf = project_load_wh(d, f);
    EquilibriumDefect e;
    for (std::size_t k = 0; k < div.size(); ++k) {
        const Vec3 p = pf.segment(3 * static_cast<Eigen::Index>(k), 3);
        e.max_defect = std::max(e.max_defect, (div[k] - p).cwiseAbs().maxCoeff());
        e.max_load = std::max(e.max_load, p.cwiseAbs().maxCoeff());
    }
    return e;
}

std::string EquivalenceReport::text() const {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3);
    for (const auto& p : pairs)
        os << std::left << std::setw(8) << p.reference << " vs " << std::setw(12) << p.weak << " skew_scale=" << std::fixed
           << std::setprecision(1) << p.skew_scale << std::scientific << std::setprecision(3)
           << "  sigma " << p.sigma_discrepancy << "  u " << p.u_discrepancy << "  ||skw sigma_w||/||sigma_w|| " << p.skew
           << "\n";
    os << "equivalence " << (pass ? "PASS" : "FAIL") << " (tolerance " << tolerance << ")\n";
    return os.str();
}

EquivalenceReport equivalence_check(std::shared_ptr<const SplitMesh> mesh, const ComplianceTensor& material,
                                    const LoadField& f) {
    EquivalenceReport rep;
    rep.pass = true;
    const std::pair<MethodId, DisplacementSpace> cases[] = {{MethodId::p0, DisplacementSpace::wh},
                                                            {MethodId::jkm, DisplacementSpace::vh}};
    for (const auto& [ref_id, space] : cases) {
        MethodConfig ref_cfg;
        ref_cfg.id = ref_id;
        const auto ref = run_method(mesh, ref_cfg, material, f);
        const auto sref = ref.stress_field();
        const auto uref = ref.disp_field();
        const double snorm = std::max(l2_norm(*ref.disc, sref), 1e-300);
        const double unorm = std::max(l2_norm(*ref.disc, uref), 1e-300);
        for (double scale : {1.0, 2.0}) {
            MethodConfig wcfg;
            wcfg.id = MethodId::weaksym;
            wcfg.weaksym_disp = space;
            wcfg.skew_scale = scale;
            const auto w = run_method(mesh, wcfg, material, f);
            const auto sw = w.stress_field();
            EquivalencePair p;
            p.reference = to_string(ref_id);
            p.weak = describe(wcfg);
            p.skew_scale = scale;
            p.sigma_discrepancy = l2_distance(*w.disc, sw, sref) / snorm;
            p.u_discrepancy = l2_distance(*w.disc, w.disp_field(), uref) / unorm;
            p.skew = relative_skew_norm(*w.disc, sw);
            rep.pass = rep.pass && p.sigma_discrepancy <= rep.tolerance && p.u_discrepancy <= rep.tolerance;
            rep.pairs.push_back(p);
        }
    }
    return rep;
}

}  // namespace alfeld
