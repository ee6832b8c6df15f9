#pragma once

// Sparse direct solver (LU with fill-reducing ordering) for the indefinite
// saddle-point systems. One step of iterative refinement is always applied
// and the final residual is checked.

#include <Eigen/Dense>

#include "alfeld/assembly.hpp"
#include "alfeld/error.hpp"

namespace alfeld {

/// Raised when the factorization meets a zero pivot. `pivot_dof` is the
/// column (unknown) at which elimination broke down.
class SingularMatrixError : public NumericalError {
public:
    SingularMatrixError(const std::string& what, int pivot_dof) : NumericalError(what), pivot_dof_(pivot_dof) {}
    int pivot_dof() const { return pivot_dof_; }

private:
    int pivot_dof_;
};

struct SolveInfo {
    double residual_before = 0.0;  ///< relative residual before refinement
    double residual = 0.0;         ///< ||A x - b|| / max(||b||, 1) after refinement
    double rcond = 0.0;            ///< reciprocal pivot-ratio estimate from the factorization
};

/// Residual tolerance of the solver contract.
constexpr double kSolverTolerance = 1e-10;

Eigen::VectorXd solve(const SparseSystem& system, const Eigen::VectorXd& rhs, SolveInfo* info = nullptr);

/// OpenBLAS 0.3.20 selects a Cooperlake dgemm kernel that returns wrong
/// results on some virtualized CPUs, which corrupts the UMFPACK factors.
/// When that kernel is active and OPENBLAS_CORETYPE is unset, re-executes the
/// program with OPENBLAS_CORETYPE=SkylakeX. Call first thing in main().
/// The residual check in solve() catches any remaining bad factorization.
void select_blas_kernel(char** argv);

}  // namespace alfeld
