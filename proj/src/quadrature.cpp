#include "alfeld/quadrature.hpp"

#include "alfeld/error.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>

namespace alfeld {

namespace {

constexpr int kMaxDegree = 8;

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

QuadratureRule build_rule(int ndim, int degree) {
    const int npts = (degree + 2) / 2;  // ceil((degree + 1) / 2)
    // Collapsed coordinates: x_1 = t_1, x_2 = (1 - t_1) t_2, ...; direction i
    // carries the Jacobian factor (1 - t_i)^(ndim - 1 - i).
    std::vector<std::vector<double>> nodes(static_cast<std::size_t>(ndim));
    std::vector<std::vector<double>> wts(static_cast<std::size_t>(ndim));
    for (int i = 0; i < ndim; ++i)
        gauss_jacobi_unit(npts, ndim - 1 - i, nodes[static_cast<std::size_t>(i)], wts[static_cast<std::size_t>(i)]);

    QuadratureRule rule;
    rule.ndim = ndim;
    rule.degree = degree;
    std::vector<int> idx(static_cast<std::size_t>(ndim), 0);
    while (true) {
        std::vector<double> x(static_cast<std::size_t>(ndim));
        double w = 1.0;
        double remaining = 1.0;
        for (int i = 0; i < ndim; ++i) {
            const double t = nodes[static_cast<std::size_t>(i)][static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
            w *= wts[static_cast<std::size_t>(i)][static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
            x[static_cast<std::size_t>(i)] = remaining * t;
            remaining *= (1.0 - t);
        }
        std::vector<double> bary(static_cast<std::size_t>(ndim + 1));
        double s = 0.0;
        for (int i = 0; i < ndim; ++i) {
            bary[static_cast<std::size_t>(i + 1)] = x[static_cast<std::size_t>(i)];
            s += x[static_cast<std::size_t>(i)];
        }
        bary[0] = 1.0 - s;
        rule.points.push_back(std::move(bary));
        rule.weights.push_back(w);

        int d = ndim - 1;
        while (d >= 0 && ++idx[static_cast<std::size_t>(d)] == npts) {
            idx[static_cast<std::size_t>(d)] = 0;
            --d;
        }
        if (d < 0) break;
    }
    return rule;
}

}  // namespace

void gauss_jacobi_unit(int npts, int alpha, std::vector<double>& nodes, std::vector<double>& weights) {
    if (npts < 1) throw InvalidArgument("gauss_jacobi_unit: npts must be >= 1");
    // Golub-Welsch on [-1,1] for weight (1-x)^alpha, beta = 0.
    const double a = alpha;
    const double b = 0.0;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(npts, npts);
    for (int n = 0; n < npts; ++n) {
        const double s = 2.0 * n + a + b;
        double diag;
        if (n == 0)
            diag = (b - a) / (a + b + 2.0);
        else
            diag = (b * b - a * a) / (s * (s + 2.0));
        jac(n, n) = diag;
        if (n + 1 < npts) {
            const double m = n + 1.0;
            const double sm = 2.0 * m + a + b;
            const double off =
                std::sqrt(4.0 * m * (m + a) * (m + b) * (m + a + b) / (sm * sm * (sm + 1.0) * (sm - 1.0)));
            jac(n, n + 1) = off;
            jac(n + 1, n) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    const double mu0 = std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 2.0);
    nodes.resize(static_cast<std::size_t>(npts));
    weights.resize(static_cast<std::size_t>(npts));
    const double scale = std::pow(2.0, -a - 1.0);
    for (int i = 0; i < npts; ++i) {
        const double x = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        nodes[static_cast<std::size_t>(i)] = 0.5 * (x + 1.0);
        weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0 * scale;
    }
}

const QuadratureRule& simplex_rule(int ndim, int degree) {
    if ((ndim != 2 && ndim != 3) || degree < 0 || degree > kMaxDegree)
        throw InvalidArgument("simplex_rule: unsupported (ndim, degree) = (" + std::to_string(ndim) + ", " +
                              std::to_string(degree) + ")");
    static const auto rules = [] {
        std::array<std::array<QuadratureRule, kMaxDegree + 1>, 2> r;
        for (int d = 2; d <= 3; ++d)
            for (int k = 0; k <= kMaxDegree; ++k) r[static_cast<std::size_t>(d - 2)][static_cast<std::size_t>(k)] = build_rule(d, k);
        return r;
    }();
    return rules[static_cast<std::size_t>(ndim - 2)][static_cast<std::size_t>(degree)];
}

double exact_monomial(std::span<const int> alpha, double volume) {
    const int n = static_cast<int>(alpha.size()) - 1;
    if (n < 1) throw InvalidArgument("exact_monomial: need at least two barycentric exponents");
    double num = factorial(n) * volume;
    int total = 0;
    for (int a : alpha) {
        if (a < 0) throw InvalidArgument("exact_monomial: negative exponent");
        num *= factorial(a);
        total += a;
    }
    return num / factorial(total + n);
}

}  // namespace alfeld
