#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>

namespace alfeld {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat9 = Eigen::Matrix<double, 9, 9>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

struct LameParameters {
    double lambda = 0.0;
    double mu = 0.0;
};

/// mu = E / (2 (1 + nu)), lambda = E nu / ((1 + nu)(1 - 2 nu)).
LameParameters lame_from_young(double young, double nu);
/// Inverse of lame_from_young: {E, nu}.
std::pair<double, double> young_from_lame(double lambda, double mu);

/// Compliance operator A (strain = A stress), stored as a 9x9 matrix on
/// row-major 3x3 matrices. A annihilates skew matrices.
class ComplianceTensor {
public:
    enum class Kind { isotropic, general };

    /// Isotropic: A s = (s - lambda / (2 mu + 3 lambda) tr(s) I) / (2 mu).
    static ComplianceTensor isotropic(double lambda, double mu);
    /// General: symmetric positive definite 6x6 Voigt stiffness, order
    /// (11, 22, 33, 23, 13, 12), engineering shear strains.
    static ComplianceTensor from_voigt_stiffness(const Mat6& voigt);

    Kind kind() const { return kind_; }
    double lambda() const { return lambda_; }
    double mu() const { return mu_; }
    /// Shear modulus used to scale the skew part in weakly symmetric methods.
    double reference_mu() const { return mu_; }

    Mat3 apply(const Mat3& s) const;
    /// Stiffness C = A^{-1} on symmetric matrices.
    Mat3 stiffness(const Mat3& e) const;
    /// A on full matrices (9x9, zero on skew part).
    const Mat9& matrix9() const { return a9_; }
    /// A on the symmetric part plus alpha times the identity on the skew part.
    Mat9 extended9(double alpha) const;
    /// C_ijkl as a 9x9 matrix.
    const Mat9& stiffness9() const { return c9_; }

    /// Smallest eigenvalue of A on symmetric matrices (coercivity constant theta).
    double coercivity() const;
    /// Smallest eigenvalue of A restricted to trace-free symmetric matrices.
    double deviatoric_coercivity() const;
    std::string describe() const;

private:
    Kind kind_ = Kind::isotropic;
    double lambda_ = 0.0;
    double mu_ = 0.0;
    Mat9 a9_;
    Mat9 c9_;
};

/// Parse `iso:E=<float>,nu=<float>`, `iso:lambda=<float>,mu=<float>` or
/// `voigt:<path>` (6x6 stiffness, row-major, whitespace separated).
ComplianceTensor parse_material(const std::string& spec);

using MatrixField = std::function<Mat3(const Vec3&)>;
using VectorField = std::function<Vec3(const Vec3&)>;

/// Exact solution on the unit cube: u, grad u, sigma = C eps(u), f = div sigma.
struct ManufacturedCase {
    std::string id;
    ComplianceTensor material;
    VectorField u;
    MatrixField grad_u;
    MatrixField sigma;
    VectorField f;
    bool zero_boundary = true;  ///< u vanishes on the cube boundary
};

/// Cases:
///   trig     u = c sin(pi x) sin(pi y) sin(pi z), c = (0.1, 0.2, 0.3)
///   divfree  u = curl-type field (d_y psi, -d_x psi, 0), psi = (sin pi x sin pi y sin pi z)^2;
///            div u = 0, so sigma does not depend on lambda
///   linear   u = a + G x (nonzero boundary values, f = 0)
ManufacturedCase manufactured_case(const ComplianceTensor& material, const std::string& id);

}  // namespace alfeld
