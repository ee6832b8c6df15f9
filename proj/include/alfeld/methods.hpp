#pragma once

// End-to-end drivers: assemble, solve and package one discrete method, and the
// comparison of the weakly symmetric method with its symmetric counterparts.

#include <Eigen/Dense>

#include <memory>
#include <string>

#include "alfeld/assembly.hpp"
#include "alfeld/linear_solver.hpp"

namespace alfeld {

struct DiscreteSolution {
    std::shared_ptr<const Discretization> disc;
    ComplianceTensor material;
    Eigen::VectorXd stress;
    Eigen::VectorXd disp;
    Eigen::VectorXd rot;  ///< weaksym only
    SolveInfo info;

    const MethodConfig& method() const { return disc->method; }
    StressField stress_field() const { return make_stress_field(*disc, stress); }
    DisplacementField disp_field() const { return make_displacement_field(*disc, disp); }
};

/// Assemble and solve. `boundary_u` gives Dirichlet data for the natural boundary term (null: u = 0).
DiscreteSolution run_method(std::shared_ptr<const Discretization> disc, const ComplianceTensor& material,
                            const LoadField& f, const VectorField* boundary_u = nullptr);
DiscreteSolution run_method(std::shared_ptr<const SplitMesh> mesh, const MethodConfig& method,
                            const ComplianceTensor& material, const LoadField& f,
                            const VectorField* boundary_u = nullptr);

// Exact L2 norms of piecewise-linear fields on the split mesh.
double l2_norm(const Discretization& d, const StressField& s);
double l2_distance(const Discretization& d, const StressField& a, const StressField& b);
double l2_norm(const Discretization& d, const DisplacementField& u);
double l2_distance(const Discretization& d, const DisplacementField& a, const DisplacementField& b);
/// ||skw sigma|| / ||sigma|| (0 for the zero field).
double relative_skew_norm(const Discretization& d, const StressField& s);

/// Subtet means of a load, cell-major W_h coefficients (fine cell * 3 + i).
Eigen::VectorXd project_load_wh(const Discretization& d, const LoadField& f, int degree = 6);
/// max over subtets of |div sigma_h - P f|, and the largest |P f| for scaling.
struct EquilibriumDefect {
    double max_defect = 0.0;
    double max_load = 0.0;
};
EquilibriumDefect equilibrium_defect(const DiscreteSolution& sol, const LoadField& f);

struct EquivalencePair {
    std::string reference;  ///< symmetric method
    std::string weak;       ///< weakly symmetric variant
    double skew_scale = 1.0;
    double sigma_discrepancy = 0.0;  ///< relative L2
    double u_discrepancy = 0.0;      ///< relative L2
    double skew = 0.0;               ///< ||skw sigma_w|| / ||sigma_w||
};

struct EquivalenceReport {
    std::vector<EquivalencePair> pairs;
    double tolerance = 1e-7;
    bool pass = false;
    std::string text() const;
};

/// Runs {p0, weaksym/W_h} and {jkm, weaksym/V_h}, each weak run for skew scales 1 and 2.
EquivalenceReport equivalence_check(std::shared_ptr<const SplitMesh> mesh, const ComplianceTensor& material,
                                    const LoadField& f);

}  // namespace alfeld
