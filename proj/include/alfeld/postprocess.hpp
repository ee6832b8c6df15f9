#pragma once

// Local quadratic displacement reconstruction u* in [P2(T)]^3 per macro cell:
//   (eps(u*), eps(v))_T = (A sigma_h, eps(v))_T   for v in S_h(T)
//   (u*, w)_T           = (P u_h, w)_T            for w in P_T R(T)
// with S_h(T) the quadratics L2-orthogonal to rigid motions and P the
// projection onto piecewise constants on the split.

#include <Eigen/Dense>

#include <vector>

#include "alfeld/methods.hpp"

namespace alfeld {

struct PostprocessedField {
    std::shared_ptr<const Discretization> disc;
    /// 30 Bernstein coefficients per macro cell (index beta * 3 + i).
    std::vector<Eigen::VectorXd> coeffs;
    double max_residual = 0.0;  ///< relative residual of the local solves

    Vec3 value(int cell, const Vec3& x) const;
};

/// Local system of one cell: matrix (30 x 30) and right-hand side.
struct PostprocessSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
};

/// Subtet means of the discrete displacement of macro cell `cell` (W_h coefficients, 12).
Eigen::VectorXd subtet_means(const DiscreteSolution& sol, int cell);

PostprocessSystem postprocess_system(const DiscreteSolution& sol, int cell);

/// Applies to any symmetric-stress method; the analysis covers jkm.
PostprocessedField postprocess_displacement(const DiscreteSolution& sol);

}  // namespace alfeld
