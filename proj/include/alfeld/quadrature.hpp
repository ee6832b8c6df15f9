#pragma once

#include <span>
#include <vector>

namespace alfeld {

/// Quadrature on the reference N-simplex {x >= 0, sum x <= 1}.
/// Points are stored in barycentric coordinates (N+1 entries, lambda_0 = 1 - sum x).
/// Weights sum to the reference measure 1/N!.
struct QuadratureRule {
    int ndim = 0;
    int degree = 0;
    std::vector<std::vector<double>> points;
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
};

/// Conical-product Gauss-Jacobi rule exact for total degree <= `degree`.
/// Supported: ndim in {2, 3}, degree in [0, 8]. All weights are positive.
const QuadratureRule& simplex_rule(int ndim, int degree);

/// Exact integral of prod lambda_i^alpha_i over an N-simplex of measure `volume`,
/// N = alpha.size() - 1:  alpha! N! |T| / (|alpha| + N)!.
double exact_monomial(std::span<const int> alpha, double volume);

/// Gauss-Jacobi nodes/weights on [0,1] for the weight (1-t)^alpha, `npts` points.
void gauss_jacobi_unit(int npts, int alpha, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace alfeld
