#pragma once

// Global saddle-point systems of the five mixed methods.
//
// Block form (unknowns: stress, displacement, rotations):
//   [ M  B^T  C^T ] [sigma]   [G]
//   [ B  0    0   ] [u    ] = [F]
//   [ C  0    0   ] [r    ]   [0]
// M_ij = (A phi_j, phi_i), B_kj = (div phi_j, v_k), C_kj = (phi_j, eta_k),
// F_k = (f, v_k), G_i = <u_D, phi_i n> on the boundary (zero for u_D = 0).
// With these signs the system is symmetric without negating any equation.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>

#include "alfeld/dof_numbering.hpp"
#include "alfeld/materials.hpp"

namespace alfeld {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

struct SparseSystem {
    int dim = 0;
    SparseMatrix matrix;
    bool symmetric = true;
};

/// Load evaluated on a fine cell of the split mesh (allows piecewise data).
using LoadField = std::function<Vec3(int fine_cell, const Vec3& x)>;
LoadField load_from(const VectorField& f);

struct LocalMatrices {
    Eigen::MatrixXd M;  ///< nstress x nstress
    Eigen::MatrixXd B;  ///< ndisp x nstress
    Eigen::MatrixXd C;  ///< nrot x nstress (weaksym only)
    Eigen::VectorXd F;  ///< ndisp
    Eigen::VectorXd G;  ///< nstress
};

/// Compliance on full matrices used by a method (extended on skew matrices for weaksym).
Mat9 method_compliance(const MethodConfig& m, const ComplianceTensor& material);

/// Local element matrices of macro cell `cell`. `f` and `boundary_u` may be null.
LocalMatrices local_matrices(const Discretization& d, const ComplianceTensor& material, int cell,
                             const LoadField* f, const VectorField* boundary_u);

struct AssembledSystem {
    SparseSystem system;
    Eigen::VectorXd rhs;
};

/// Assemble the full system. Local matrices are computed in parallel and merged
/// in cell order, so the result does not depend on the thread count.
AssembledSystem assemble(const Discretization& d, const ComplianceTensor& material, const LoadField& f,
                         const VectorField* boundary_u = nullptr);

/// Stress Gram matrices: L2 ((phi_j, phi_i)) and divergence ((div phi_j, div phi_i)).
struct StressGrams {
    SparseMatrix l2;
    SparseMatrix div;
};
StressGrams stress_grams(const Discretization& d);
/// L2 Gram of the displacement space.
SparseMatrix displacement_mass(const Discretization& d);

/// Row-wise divergence on subtet s as a 3 x 36 map on vertex values.
Eigen::Matrix<double, 3, 36> divergence_operator(const MacroGeometry& geo, int s);

/// Weighted P1 mass: sum_ab |K| (1 + delta_ab) / 20 X_a^T W Y_b with blocks of `block` rows.
Eigen::MatrixXd p1_mass(double volume, const Eigen::MatrixXd& X, const Eigen::MatrixXd& W, const Eigen::MatrixXd& Y,
                        int block);

}  // namespace alfeld
