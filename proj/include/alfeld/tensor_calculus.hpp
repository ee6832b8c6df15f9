#pragma once

// Exact polynomial tensor fields and the algebraic/differential operators of
// linear elasticity: sym, skw, dev, mskw, vskw, Xi, Theta, the skew
// "d" operator, grad, div and curl.
//
// Index conventions (Einstein summation, 0-based):
//   * matrices are row-major, div acts row-wise: (div M)_i = d_j M_ij;
//   * 3-tensors a_ijk are dense N^3 arrays; div contracts the last index:
//     (div a)_ij = d_k a_ijk;
//   * a K-valued field is stored as its full skew matrix H = eta_ij E_ij,
//     i.e. H_ij = eta_ij - eta_ji, so that d(H) is the row-wise divergence of
//     H. A (V x K)-valued field is stored as the full tensor a_ijk that is skew
//     in (j,k), and d(a)_ij = d_k a_ijk. With this normalization
//     div Theta a = 2 skw d a holds exactly.

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

namespace alfeld {

enum class ValueShape { scalar, vector, matrix, tensor3 };

int value_rank(ValueShape shape);

/// Multi-index exponent of a monomial x_0^e_0 ... x_{N-1}^e_{N-1}.
using Exponent = std::vector<int>;

/// Multivariate polynomial with scalar, vector, matrix or 3-tensor values.
/// Values are flattened row-major with N^rank entries.
class PolyField {
public:
    PolyField(int ndim, ValueShape shape);

    int ndim() const { return ndim_; }
    ValueShape shape() const { return shape_; }
    int value_size() const { return value_size_; }
    /// Highest total degree carrying a nonzero coefficient; -1 for the zero field.
    int degree() const;
    bool is_zero(double tol = 0.0) const;

    const std::map<Exponent, std::vector<double>>& terms() const { return terms_; }

    /// Adds `value` to the coefficient of monomial `e`.
    void add_term(const Exponent& e, std::span<const double> value);
    /// Adds `c` to one flattened component of the coefficient of `e`.
    void add_to(const Exponent& e, int component, double c);

    /// Evaluates the field at x (length ndim).
    std::vector<double> evaluate(std::span<const double> x) const;

    /// Partial derivative with respect to x_k.
    PolyField derivative(int k) const;

    PolyField operator+(const PolyField& other) const;
    PolyField operator-(const PolyField& other) const;
    PolyField operator*(double s) const;
    /// Product with a scalar polynomial (value shape is kept).
    PolyField times(const PolyField& scalar_poly) const;

    /// Flattened component `c` as a scalar field.
    PolyField component(int c) const;

    /// Applies a linear map to every coefficient value.
    /// `map` reads `value_size()` entries and writes `out_size` entries.
    template <class F>
    PolyField map_values(ValueShape out_shape, F&& map) const {
        PolyField out(ndim_, out_shape);
        std::vector<double> buf(static_cast<std::size_t>(out.value_size_));
        for (const auto& [e, v] : terms_) {
            std::fill(buf.begin(), buf.end(), 0.0);
            map(std::span<const double>(v), std::span<double>(buf));
            out.add_term(e, buf);
        }
        return out;
    }

    /// Largest absolute coefficient.
    double max_abs_coeff() const;

    /// Random field with all coefficients uniform in [-1,1], total degree <= degree.
    static PolyField random(int ndim, ValueShape shape, int degree, std::mt19937_64& rng);
    /// Constant field.
    static PolyField constant(int ndim, ValueShape shape, std::span<const double> value);
    /// Affine scalar field c + g.x
    static PolyField affine(double c, std::span<const double> g);

private:
    int ndim_;
    ValueShape shape_;
    int value_size_;
    std::map<Exponent, std::vector<double>> terms_;
};

/// Every multi-index of length ndim with total degree <= degree, graded order.
std::vector<Exponent> monomials_up_to(int ndim, int degree);

// ---------------------------------------------------------------------------
// Pointwise matrix algebra

struct MatrixParts {
    Eigen::MatrixXd sym;
    Eigen::MatrixXd skw;
    Eigen::MatrixXd dev;
    double tr = 0.0;
};

/// sym, skw, dev (= M - tr(M)/N I) and trace of a square matrix.
MatrixParts matrix_parts(const Eigen::MatrixXd& m);

/// Xi M = M' - tr(M) I (3x3 only).
Eigen::Matrix3d xi(const Eigen::Matrix3d& m);
/// Xi^{-1} M = M' - tr(M)/2 I (3x3 only).
Eigen::Matrix3d xi_inv(const Eigen::Matrix3d& m);
Eigen::MatrixXd xi(const Eigen::MatrixXd& m);
Eigen::MatrixXd xi_inv(const Eigen::MatrixXd& m);

/// mskw(v) v x (.) as a skew matrix.
Eigen::Matrix3d mskw(const Eigen::Vector3d& v);
/// vskw = mskw^{-1} o skw.
Eigen::Vector3d vskw(const Eigen::Matrix3d& m);
Eigen::VectorXd vskw(const Eigen::MatrixXd& m);

/// Dense N x N x N tensor, row-major a(i,j,k) = data[(i*N + j)*N + k].
struct Tensor3 {
    int n = 0;
    std::vector<double> data;

    explicit Tensor3(int n_ = 0) : n(n_), data(static_cast<std::size_t>(n_ * n_ * n_), 0.0) {}
    double& operator()(int i, int j, int k) { return data[static_cast<std::size_t>((i * n + j) * n + k)]; }
    double operator()(int i, int j, int k) const { return data[static_cast<std::size_t>((i * n + j) * n + k)]; }
};

/// Theta a: (Theta a)_ijk = a_ijk - a_jik. Input must be skew in (j,k).
Tensor3 theta(const Tensor3& a, double tol = 1e-12);
/// Theta^{-1} b = (b_ijk - b_ikj - b_jki)/2. Input must be skew in (i,j).
Tensor3 theta_inv(const Tensor3& b, double tol = 1e-12);

/// Skew-matrix basis E_ij = e_i e_j' - e_j e_i' for i < j, lexicographic.
struct MatrixOpsTable {
    int n;
    std::vector<std::pair<int, int>> index_pairs;
    std::vector<Eigen::MatrixXd> skew_basis;

    explicit MatrixOpsTable(int n);
    int dim_skew() const { return static_cast<int>(skew_basis.size()); }
};

// ---------------------------------------------------------------------------
// Field operators

PolyField grad(const PolyField& f);
PolyField div(const PolyField& f);
/// Curl of a vector field or row-wise curl of a matrix field (N = 3 only).
PolyField curl(const PolyField& f);

PolyField sym(const PolyField& m);
PolyField skw(const PolyField& m);
PolyField transpose(const PolyField& m);
PolyField trace(const PolyField& m);
PolyField dev(const PolyField& m);
PolyField xi(const PolyField& m);
PolyField xi_inv(const PolyField& m);
PolyField mskw(const PolyField& v);
PolyField vskw(const PolyField& m);

/// The d operator: K-valued (skew matrix) -> vector, or (V x K)-valued
/// (tensor skew in its last two indices) -> matrix.
PolyField dd_operator(const PolyField& eta, double tol = 1e-12);
PolyField theta(const PolyField& a, double tol = 1e-12);
PolyField theta_inv(const PolyField& b, double tol = 1e-12);

/// Random K-valued field (skew matrices).
PolyField random_skew_field(int ndim, int degree, std::mt19937_64& rng);
/// Random (V x K)-valued field (tensor skew in last two indices).
PolyField random_vk_field(int ndim, int degree, std::mt19937_64& rng);

}  // namespace alfeld
