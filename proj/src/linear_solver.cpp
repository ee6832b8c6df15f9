#include "alfeld/linear_solver.hpp"

#include <dlfcn.h>
#include <umfpack.h>
#include <unistd.h>

#include <cstdlib>
#include <cstring>

#include <memory>
#include <sstream>
#include <vector>

namespace alfeld {

namespace {

struct Symbolic {
    void* p = nullptr;
    ~Symbolic() {
        if (p) umfpack_di_free_symbolic(&p);
    }
};

struct Numeric {
    void* p = nullptr;
    ~Numeric() {
        if (p) umfpack_di_free_numeric(&p);
    }
};

// Column of the first zero diagonal entry of U, mapped back to the original column.
int zero_pivot_column(void* numeric, int n) {
    int lnz = 0, unz = 0, nrow = 0, ncol = 0, nz_udiag = 0;
    if (umfpack_di_get_lunz(&lnz, &unz, &nrow, &ncol, &nz_udiag, numeric) != UMFPACK_OK) return -1;
    std::vector<int> q(static_cast<std::size_t>(n));
    std::vector<double> dx(static_cast<std::size_t>(std::min(nrow, ncol)));
    int do_recip = 0;
    if (umfpack_di_get_numeric(nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, q.data(), dx.data(),
                               &do_recip, nullptr, numeric) != UMFPACK_OK)
        return -1;
    for (std::size_t k = 0; k < dx.size(); ++k)
        if (dx[k] == 0.0) return q[k];
    return -1;
}

}  // namespace

Eigen::VectorXd solve(const SparseSystem& system, const Eigen::VectorXd& rhs, SolveInfo* info) {
    const SparseMatrix& a = system.matrix;
    const int n = static_cast<int>(a.rows());
    ALFELD_REQUIRE(a.rows() == a.cols(), InvalidArgument, "solve: matrix is not square");
    ALFELD_REQUIRE(rhs.size() == n, InvalidArgument, "solve: right-hand side length mismatch");
    ALFELD_REQUIRE(a.isCompressed(), InvalidArgument, "solve: matrix must be compressed");
    if (n == 0) return Eigen::VectorXd();

    double control[UMFPACK_CONTROL];
    double stats[UMFPACK_INFO];
    umfpack_di_defaults(control);
    control[UMFPACK_IRSTEP] = 0;  // refinement is done below

    const int* ap = a.outerIndexPtr();
    const int* ai = a.innerIndexPtr();
    const double* ax = a.valuePtr();

    Symbolic sym;
    int status = umfpack_di_symbolic(n, n, ap, ai, ax, &sym.p, control, stats);
    if (status != UMFPACK_OK) {
        std::ostringstream os;
        os << "solve: symbolic factorization failed (UMFPACK status " << status << ")";
        throw NumericalError(os.str());
    }
    Numeric num;
    status = umfpack_di_numeric(ap, ai, ax, sym.p, &num.p, control, stats);
    if (status == UMFPACK_WARNING_singular_matrix) {
        const int col = zero_pivot_column(num.p, n);
        std::ostringstream os;
        os << "solve: matrix is singular, zero pivot at unknown " << col;
        throw SingularMatrixError(os.str(), col);
    }
    if (status != UMFPACK_OK) {
        std::ostringstream os;
        os << "solve: numeric factorization failed (UMFPACK status " << status << ")";
        throw NumericalError(os.str());
    }
    const double rcond = stats[UMFPACK_RCOND];

    auto lu_solve = [&](const Eigen::VectorXd& b) {
        Eigen::VectorXd x(n);
        const int st = umfpack_di_solve(UMFPACK_A, ap, ai, ax, x.data(), b.data(), num.p, control, stats);
        if (st != UMFPACK_OK) {
            std::ostringstream os;
            os << "solve: triangular solve failed (UMFPACK status " << st << ")";
            throw NumericalError(os.str());
        }
        return x;
    };

    const double scale = std::max(rhs.norm(), 1.0);
    Eigen::VectorXd x = lu_solve(rhs);
    Eigen::VectorXd r = rhs - a * x;
    const double before = r.norm() / scale;
    x += lu_solve(r);
    r = rhs - a * x;
    const double after = r.norm() / scale;
    if (info) {
        info->residual_before = before;
        info->residual = after;
        info->rcond = rcond;
    }
    if (!(after <= kSolverTolerance)) {
        std::ostringstream os;
        os << "solve: relative residual " << after << " exceeds " << kSolverTolerance << " after refinement";
        throw NumericalError(os.str());
    }
    return x;
}

void select_blas_kernel(char** argv) {
    if (std::getenv("OPENBLAS_CORETYPE")) return;
    using CoreName = char* (*)();
    auto corename = reinterpret_cast<CoreName>(dlsym(RTLD_DEFAULT, "openblas_get_corename"));
    if (!corename) return;
    const char* name = corename();
    if (!name || strcasecmp(name, "cooperlake") != 0) return;
    setenv("OPENBLAS_CORETYPE", "SkylakeX", 1);
    execv("/proc/self/exe", argv);
    // exec failed: continue with the default kernel
}

}  // namespace alfeld
