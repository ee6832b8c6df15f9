#include "alfeld/materials.hpp"

#include "alfeld/error.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>
#include <vector>

namespace alfeld {

namespace {

using Vec9 = Eigen::Matrix<double, 9, 1>;
using Mandel = Eigen::Matrix<double, 6, 9>;

Vec9 vec9(const Mat3& m) {
    Vec9 v;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v(i * 3 + j) = m(i, j);
    return v;
}

Mat3 mat3(const Vec9& v) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = v(i * 3 + j);
    return m;
}

// Orthonormal (Frobenius) coordinates of the symmetric part: 11, 22, 33, 23, 13, 12.
Mandel mandel_map() {
    Mandel e = Mandel::Zero();
    const double r = 1.0 / std::sqrt(2.0);
    e(0, 0) = e(1, 4) = e(2, 8) = 1.0;
    e(3, 5) = e(3, 7) = r;
    e(4, 2) = e(4, 6) = r;
    e(5, 1) = e(5, 3) = r;
    return e;
}

Mat9 sym_projector() {
    Mat9 p = Mat9::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            p(i * 3 + j, i * 3 + j) += 0.5;
            p(i * 3 + j, j * 3 + i) += 0.5;
        }
    return p;
}

double parse_double(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw InvalidArgument("material: cannot parse " + what + " value '" + s + "'");
    }
    if (pos != s.size() || !std::isfinite(v)) throw InvalidArgument("material: cannot parse " + what + " value '" + s + "'");
    return v;
}

}  // namespace

LameParameters lame_from_young(double young, double nu) {
    ALFELD_REQUIRE(young > 0.0, InvalidArgument, "material: E must be positive");
    ALFELD_REQUIRE(nu > -1.0 && nu < 0.5, InvalidArgument, "material: nu must lie in (-1, 1/2)");
    return {young * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)), young / (2.0 * (1.0 + nu))};
}

std::pair<double, double> young_from_lame(double lambda, double mu) {
    ALFELD_REQUIRE(mu > 0.0 && 2.0 * mu + 3.0 * lambda > 0.0, InvalidArgument, "material: invalid Lame parameters");
    const double young = mu * (3.0 * lambda + 2.0 * mu) / (lambda + mu);
    const double nu = lambda / (2.0 * (lambda + mu));
    return {young, nu};
}

ComplianceTensor ComplianceTensor::isotropic(double lambda, double mu) {
    ALFELD_REQUIRE(mu > 0.0, InvalidArgument, "material: mu must be positive");
    ALFELD_REQUIRE(2.0 * mu + 3.0 * lambda > 0.0, InvalidArgument, "material: 2 mu + 3 lambda must be positive");
    ComplianceTensor a;
    a.kind_ = Kind::isotropic;
    a.lambda_ = lambda;
    a.mu_ = mu;
    const Mat9 ps = sym_projector();
    const Vec9 id = vec9(Mat3::Identity());
    a.a9_ = (ps - lambda / (2.0 * mu + 3.0 * lambda) * id * id.transpose()) / (2.0 * mu);
    a.c9_ = 2.0 * mu * ps + lambda * id * id.transpose();
    return a;
}

ComplianceTensor ComplianceTensor::from_voigt_stiffness(const Mat6& voigt) {
    ALFELD_REQUIRE((voigt - voigt.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * voigt.cwiseAbs().maxCoeff(),
                   InvalidArgument, "material: Voigt matrix must be symmetric");
    Eigen::Matrix<double, 6, 1> w;
    w << 1, 1, 1, std::sqrt(2.0), std::sqrt(2.0), std::sqrt(2.0);
    const Mat6 cm = w.asDiagonal() * voigt * w.asDiagonal();
    Eigen::LLT<Mat6> llt(cm);
    ALFELD_REQUIRE(llt.info() == Eigen::Success, InvalidArgument, "material: Voigt stiffness is not positive definite");
    const Mandel e = mandel_map();
    ComplianceTensor a;
    a.kind_ = Kind::general;
    a.a9_ = e.transpose() * llt.solve(Mat6::Identity()) * e;
    a.c9_ = e.transpose() * cm * e;
    // Reference shear modulus for weakly symmetric methods: mean shear stiffness.
    a.mu_ = (voigt(3, 3) + voigt(4, 4) + voigt(5, 5)) / 3.0;
    a.lambda_ = 0.0;
    return a;
}

Mat3 ComplianceTensor::apply(const Mat3& s) const { return mat3(a9_ * vec9(s)); }

Mat3 ComplianceTensor::stiffness(const Mat3& e) const { return mat3(c9_ * vec9(e)); }

Mat9 ComplianceTensor::extended9(double alpha) const { return a9_ + alpha * (Mat9::Identity() - sym_projector()); }

double ComplianceTensor::coercivity() const {
    const Mandel e = mandel_map();
    const Mat6 am = e * a9_ * e.transpose();
    return Eigen::SelfAdjointEigenSolver<Mat6>(am).eigenvalues()(0);
}

double ComplianceTensor::deviatoric_coercivity() const {
    const Mandel e = mandel_map();
    const Mat6 am = e * a9_ * e.transpose();
    Eigen::Matrix<double, 6, 1> t = Eigen::Matrix<double, 6, 1>::Zero();
    t.head<3>().setConstant(1.0 / std::sqrt(3.0));
    const Mat6 p = Mat6::Identity() - t * t.transpose();
    Eigen::SelfAdjointEigenSolver<Mat6> es(p * am * p);
    // p * am * p has a zero eigenvalue along t; skip it.
    double best = 1e300;
    for (int i = 0; i < 6; ++i) {
        const double align = std::abs(es.eigenvectors().col(i).dot(t));
        if (align < 0.5) best = std::min(best, es.eigenvalues()(i));
    }
    return best;
}

std::string ComplianceTensor::describe() const {
    std::ostringstream s;
    s.precision(6);
    if (kind_ == Kind::isotropic) {
        const auto [young, nu] = young_from_lame(lambda_, mu_);
        s << "isotropic lambda=" << lambda_ << " mu=" << mu_ << " (E=" << young << " nu=" << nu << ")";
    } else {
        s << "general (Voigt stiffness)";
    }
    s << " theta=" << coercivity() << " theta_dev=" << deviatoric_coercivity();
    return s.str();
}

ComplianceTensor parse_material(const std::string& spec) {
    const auto colon = spec.find(':');
    ALFELD_REQUIRE(colon != std::string::npos, InvalidArgument,
                   "material: expected 'iso:E=..,nu=..', 'iso:lambda=..,mu=..' or 'voigt:<path>', got '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "iso") {
        double young = NAN, nu = NAN, lambda = NAN, mu = NAN;
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            ALFELD_REQUIRE(eq != std::string::npos, InvalidArgument, "material: expected key=value, got '" + item + "'");
            const std::string key = item.substr(0, eq);
            const double val = parse_double(item.substr(eq + 1), key);
            if (key == "E")
                young = val;
            else if (key == "nu")
                nu = val;
            else if (key == "lambda")
                lambda = val;
            else if (key == "mu")
                mu = val;
            else
                throw InvalidArgument("material: unknown key '" + key + "'");
        }
        if (!std::isnan(young) && !std::isnan(nu) && std::isnan(lambda) && std::isnan(mu)) {
            const auto l = lame_from_young(young, nu);
            return ComplianceTensor::isotropic(l.lambda, l.mu);
        }
        if (std::isnan(young) && std::isnan(nu) && !std::isnan(lambda) && !std::isnan(mu))
            return ComplianceTensor::isotropic(lambda, mu);
        throw InvalidArgument("material: give either E and nu, or lambda and mu");
    }
    if (kind == "voigt") {
        std::ifstream f(rest);
        ALFELD_REQUIRE(static_cast<bool>(f), InvalidArgument, "material: cannot open Voigt file '" + rest + "'");
        Mat6 v;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                ALFELD_REQUIRE(static_cast<bool>(f >> v(i, j)), InvalidArgument, "material: Voigt file needs 36 numbers");
        std::string extra;
        ALFELD_REQUIRE(!(f >> extra), InvalidArgument, "material: trailing content in Voigt file");
        return ComplianceTensor::from_voigt_stiffness(v);
    }
    throw InvalidArgument("material: unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------

namespace {

using Multi = std::array<int, 3>;
// Partial derivative of u_i of multi-order m at x.
using Derivative = std::function<double(int, const Multi&, const Vec3&)>;

// k-th derivative of sin(pi t).
double dsin(int k, double t) {
    const double pi = std::numbers::pi;
    const double pk = std::pow(pi, k);
    switch (k % 4) {
        case 0: return pk * std::sin(pi * t);
        case 1: return pk * std::cos(pi * t);
        case 2: return -pk * std::sin(pi * t);
        default: return -pk * std::cos(pi * t);
    }
}

// k-th derivative of sin^2(pi t) = (1 - cos(2 pi t)) / 2.
double dsin2(int k, double t) {
    const double w = 2.0 * std::numbers::pi;
    if (k == 0) return std::pow(std::sin(std::numbers::pi * t), 2);
    const double wk = 0.5 * std::pow(w, k);
    switch (k % 4) {
        case 1: return wk * std::sin(w * t);
        case 2: return wk * std::cos(w * t);
        case 3: return -wk * std::sin(w * t);
        default: return -wk * std::cos(w * t);
    }
}

ManufacturedCase from_derivatives(const ComplianceTensor& mat, const std::string& id, Derivative d, bool zero_bc) {
    auto dd = std::make_shared<Derivative>(std::move(d));
    ManufacturedCase mc{id, mat, {}, {}, {}, {}, zero_bc};
    mc.u = [dd](const Vec3& x) {
        Vec3 u;
        for (int i = 0; i < 3; ++i) u(i) = (*dd)(i, {0, 0, 0}, x);
        return u;
    };
    mc.grad_u = [dd](const Vec3& x) {
        Mat3 g;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Multi m{0, 0, 0};
                m[static_cast<std::size_t>(j)] = 1;
                g(i, j) = (*dd)(i, m, x);
            }
        return g;
    };
    const auto grad = mc.grad_u;
    mc.sigma = [grad, mat](const Vec3& x) {
        const Mat3 g = grad(x);
        return mat.stiffness(0.5 * (g + g.transpose()));
    };
    mc.f = [dd, mat](const Vec3& x) {
        // f_i = sum_{j,k,l} C_{ij,kl} d_j d_l u_k
        double d2[3][3][3];
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l)
                for (int j = 0; j < 3; ++j) {
                    Multi m{0, 0, 0};
                    m[static_cast<std::size_t>(l)] += 1;
                    m[static_cast<std::size_t>(j)] += 1;
                    d2[k][l][j] = (*dd)(k, m, x);
                }
        const Mat9& c = mat.stiffness9();
        Vec3 f = Vec3::Zero();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l) f(i) += c(i * 3 + j, k * 3 + l) * d2[k][l][j];
        return f;
    };
    return mc;
}

}  // namespace

ManufacturedCase manufactured_case(const ComplianceTensor& material, const std::string& id) {
    if (id == "trig") {
        const Vec3 c(0.1, 0.2, 0.3);
        return from_derivatives(
            material, id,
            [c](int i, const Multi& m, const Vec3& x) {
                return c(i) * dsin(m[0], x(0)) * dsin(m[1], x(1)) * dsin(m[2], x(2));
            },
            true);
    }
    if (id == "divfree") {
        // u = (d_1 psi, -d_0 psi, 0)
        return from_derivatives(
            material, id,
            [](int i, const Multi& m, const Vec3& x) {
                if (i == 2) return 0.0;
                Multi mm = m;
                mm[i == 0 ? 1 : 0] += 1;
                const double v = dsin2(mm[0], x(0)) * dsin2(mm[1], x(1)) * dsin2(mm[2], x(2));
                return i == 0 ? v : -v;
            },
            true);
    }
    if (id == "linear") {
        const Vec3 a(0.1, -0.2, 0.3);
        Mat3 g;
        g << 0.3, -0.1, 0.2, 0.4, -0.2, 0.1, -0.3, 0.5, 0.25;
        return from_derivatives(
            material, id,
            [a, g](int i, const Multi& m, const Vec3& x) {
                const int order = m[0] + m[1] + m[2];
                if (order == 0) return a(i) + g.row(i).dot(x);
                if (order == 1) {
                    for (int j = 0; j < 3; ++j)
                        if (m[static_cast<std::size_t>(j)] == 1) return g(i, j);
                }
                return 0.0;
            },
            false);
    }
    throw InvalidArgument("unknown manufactured case '" + id + "' (expected trig, divfree or linear)");
}

}  // namespace alfeld
