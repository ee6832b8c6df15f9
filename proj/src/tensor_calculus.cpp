#include "alfeld/tensor_calculus.hpp"

#include "alfeld/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace alfeld {

namespace {

int ipow(int base, int exp) {
    int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void require_shape(const PolyField& f, ValueShape shape, const char* op) {
    if (f.shape() != shape) throw InvalidArgument(std::string(op) + ": unsupported value shape");
}

void require_3d(int ndim, const char* op) {
    if (ndim != 3) throw InvalidArgument(std::string(op) + ": only defined for N = 3");
}

void require_3x3(const Eigen::MatrixXd& m, const char* op) {
    if (m.rows() != 3 || m.cols() != 3) throw InvalidArgument(std::string(op) + ": only defined for 3x3 matrices");
}

void check_skew_last_two(const PolyField& a, double tol, const char* op) {
    const int n = a.ndim();
    for (const auto& [e, v] : a.terms()) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const double s = v[static_cast<std::size_t>((i * n + j) * n + k)] +
                                     v[static_cast<std::size_t>((i * n + k) * n + j)];
                    if (std::abs(s) > tol)
                        throw InvalidArgument(std::string(op) + ": input is not skew in its last two indices");
                }
    }
}

void check_skew_first_two(const PolyField& b, double tol, const char* op) {
    const int n = b.ndim();
    for (const auto& [e, v] : b.terms()) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const double s = v[static_cast<std::size_t>((i * n + j) * n + k)] +
                                     v[static_cast<std::size_t>((j * n + i) * n + k)];
                    if (std::abs(s) > tol)
                        throw InvalidArgument(std::string(op) + ": input is not skew in its first two indices");
                }
    }
}

}  // namespace

int value_rank(ValueShape shape) {
    switch (shape) {
    case ValueShape::scalar: return 0;
    case ValueShape::vector: return 1;
    case ValueShape::matrix: return 2;
    case ValueShape::tensor3: return 3;
    }
    return 0;
}

PolyField::PolyField(int ndim, ValueShape shape)
    : ndim_(ndim), shape_(shape), value_size_(ipow(ndim, value_rank(shape))) {
    if (ndim < 1) throw InvalidArgument("PolyField: ndim must be >= 1");
}

int PolyField::degree() const {
    int d = -1;
    for (const auto& [e, v] : terms_) {
        const bool nonzero = std::any_of(v.begin(), v.end(), [](double c) { return c != 0.0; });
        if (!nonzero) continue;
        int deg = 0;
        for (int p : e) deg += p;
        d = std::max(d, deg);
    }
    return d;
}

bool PolyField::is_zero(double tol) const { return max_abs_coeff() <= tol; }

void PolyField::add_term(const Exponent& e, std::span<const double> value) {
    if (static_cast<int>(e.size()) != ndim_) throw InvalidArgument("PolyField: exponent length mismatch");
    if (static_cast<int>(value.size()) != value_size_) throw InvalidArgument("PolyField: value size mismatch");
    for (int p : e)
        if (p < 0) throw InvalidArgument("PolyField: negative exponent");
    auto [it, inserted] = terms_.try_emplace(e, std::vector<double>(value.begin(), value.end()));
    if (!inserted)
        for (std::size_t i = 0; i < value.size(); ++i) it->second[i] += value[i];
}

void PolyField::add_to(const Exponent& e, int component, double c) {
    std::vector<double> v(static_cast<std::size_t>(value_size_), 0.0);
    v[static_cast<std::size_t>(component)] = c;
    add_term(e, v);
}

std::vector<double> PolyField::evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != ndim_) throw InvalidArgument("PolyField::evaluate: point dimension mismatch");
    std::vector<double> out(static_cast<std::size_t>(value_size_), 0.0);
    for (const auto& [e, v] : terms_) {
        double m = 1.0;
        for (int k = 0; k < ndim_; ++k) m *= std::pow(x[static_cast<std::size_t>(k)], e[static_cast<std::size_t>(k)]);
        for (std::size_t i = 0; i < v.size(); ++i) out[i] += m * v[i];
    }
    return out;
}

PolyField PolyField::derivative(int k) const {
    if (k < 0 || k >= ndim_) throw InvalidArgument("PolyField::derivative: bad direction");
    PolyField out(ndim_, shape_);
    std::vector<double> buf(static_cast<std::size_t>(value_size_));
    for (const auto& [e, v] : terms_) {
        const int p = e[static_cast<std::size_t>(k)];
        if (p == 0) continue;
        Exponent de = e;
        de[static_cast<std::size_t>(k)] = p - 1;
        for (std::size_t i = 0; i < v.size(); ++i) buf[i] = p * v[i];
        out.add_term(de, buf);
    }
    return out;
}

PolyField PolyField::operator+(const PolyField& other) const {
    if (other.ndim_ != ndim_ || other.shape_ != shape_) throw InvalidArgument("PolyField: incompatible operands");
    PolyField out = *this;
    for (const auto& [e, v] : other.terms_) out.add_term(e, v);
    return out;
}

PolyField PolyField::operator-(const PolyField& other) const { return *this + other * -1.0; }

PolyField PolyField::operator*(double s) const {
    PolyField out = *this;
    for (auto& [e, v] : out.terms_)
        for (double& c : v) c *= s;
    return out;
}

PolyField PolyField::times(const PolyField& p) const {
    if (p.shape_ != ValueShape::scalar || p.ndim_ != ndim_) throw InvalidArgument("PolyField::times: expects a scalar polynomial");
    PolyField out(ndim_, shape_);
    std::vector<double> buf(static_cast<std::size_t>(value_size_));
    for (const auto& [ea, va] : terms_)
        for (const auto& [eb, vb] : p.terms_) {
            Exponent e(ea.size());
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            for (std::size_t i = 0; i < va.size(); ++i) buf[i] = va[i] * vb[0];
            out.add_term(e, buf);
        }
    return out;
}

PolyField PolyField::component(int c) const {
    if (c < 0 || c >= value_size_) throw InvalidArgument("PolyField::component: index out of range");
    PolyField out(ndim_, ValueShape::scalar);
    for (const auto& [e, v] : terms_) {
        const double x = v[static_cast<std::size_t>(c)];
        out.add_term(e, std::span<const double>(&x, 1));
    }
    return out;
}

double PolyField::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [e, v] : terms_)
        for (double c : v) m = std::max(m, std::abs(c));
    return m;
}

std::vector<Exponent> monomials_up_to(int ndim, int degree) {
    std::vector<Exponent> out;
    Exponent e(static_cast<std::size_t>(ndim), 0);
    // Recursive enumeration by total degree.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == ndim - 1) {
            e[static_cast<std::size_t>(pos)] = remaining;
            out.push_back(e);
            return;
        }
        for (int p = remaining; p >= 0; --p) {
            e[static_cast<std::size_t>(pos)] = p;
            self(self, pos + 1, remaining - p);
        }
    };
    for (int d = 0; d <= degree; ++d) rec(rec, 0, d);
    return out;
}

PolyField PolyField::random(int ndim, ValueShape shape, int degree, std::mt19937_64& rng) {
    PolyField out(ndim, shape);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(out.value_size_));
    for (const auto& e : monomials_up_to(ndim, degree)) {
        for (double& c : v) c = dist(rng);
        out.add_term(e, v);
    }
    return out;
}

PolyField PolyField::constant(int ndim, ValueShape shape, std::span<const double> value) {
    PolyField out(ndim, shape);
    out.add_term(Exponent(static_cast<std::size_t>(ndim), 0), value);
    return out;
}

PolyField PolyField::affine(double c, std::span<const double> g) {
    const int n = static_cast<int>(g.size());
    PolyField out(n, ValueShape::scalar);
    out.add_term(Exponent(static_cast<std::size_t>(n), 0), std::span<const double>(&c, 1));
    for (int k = 0; k < n; ++k) {
        Exponent e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(k)] = 1;
        out.add_term(e, g.subspan(static_cast<std::size_t>(k), 1));
    }
    return out;
}

// ---------------------------------------------------------------------------

MatrixParts matrix_parts(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("matrix_parts: matrix must be square");
    MatrixParts p;
    p.sym = 0.5 * (m + m.transpose());
    p.skw = 0.5 * (m - m.transpose());
    p.tr = m.trace();
    p.dev = m - (p.tr / static_cast<double>(m.rows())) * Eigen::MatrixXd::Identity(m.rows(), m.cols());
    return p;
}

Eigen::Matrix3d xi(const Eigen::Matrix3d& m) { return m.transpose() - m.trace() * Eigen::Matrix3d::Identity(); }

Eigen::Matrix3d xi_inv(const Eigen::Matrix3d& m) {
    return m.transpose() - 0.5 * m.trace() * Eigen::Matrix3d::Identity();
}

Eigen::MatrixXd xi(const Eigen::MatrixXd& m) {
    require_3x3(m, "xi");
    return xi(Eigen::Matrix3d(m));
}

Eigen::MatrixXd xi_inv(const Eigen::MatrixXd& m) {
    require_3x3(m, "xi_inv");
    return xi_inv(Eigen::Matrix3d(m));
}

Eigen::Matrix3d mskw(const Eigen::Vector3d& v) {
    Eigen::Matrix3d m;
    m << 0.0, -v(2), v(1),
         v(2), 0.0, -v(0),
         -v(1), v(0), 0.0;
    return m;
}

Eigen::Vector3d vskw(const Eigen::Matrix3d& m) {
    return 0.5 * Eigen::Vector3d(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

Eigen::VectorXd vskw(const Eigen::MatrixXd& m) {
    require_3x3(m, "vskw");
    return vskw(Eigen::Matrix3d(m));
}

Tensor3 theta(const Tensor3& a, double tol) {
    const int n = a.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (std::abs(a(i, j, k) + a(i, k, j)) > tol)
                    throw InvalidArgument("theta: input is not skew in its last two indices");
    Tensor3 b(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) b(i, j, k) = a(i, j, k) - a(j, i, k);
    return b;
}

Tensor3 theta_inv(const Tensor3& b, double tol) {
    const int n = b.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (std::abs(b(i, j, k) + b(j, i, k)) > tol)
                    throw InvalidArgument("theta_inv: input is not skew in its first two indices");
    Tensor3 a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) a(i, j, k) = 0.5 * (b(i, j, k) - b(i, k, j) - b(j, k, i));
    return a;
}

MatrixOpsTable::MatrixOpsTable(int n_) : n(n_) {
    if (n < 2) throw InvalidArgument("MatrixOpsTable: N must be >= 2");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            index_pairs.emplace_back(i, j);
            Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
            e(i, j) = 1.0;
            e(j, i) = -1.0;
            skew_basis.push_back(std::move(e));
        }
}

// ---------------------------------------------------------------------------

PolyField grad(const PolyField& f) {
    const int n = f.ndim();
    ValueShape out_shape;
    switch (f.shape()) {
    case ValueShape::scalar: out_shape = ValueShape::vector; break;
    case ValueShape::vector: out_shape = ValueShape::matrix; break;
    default: throw InvalidArgument("grad: supported for scalar and vector fields");
    }
    PolyField out(n, out_shape);
    const int m = f.value_size();
    for (int k = 0; k < n; ++k) {
        const PolyField dk = f.derivative(k);
        for (const auto& [e, v] : dk.terms())
            for (int i = 0; i < m; ++i) out.add_to(e, i * n + k, v[static_cast<std::size_t>(i)]);
    }
    return out;
}

PolyField div(const PolyField& f) {
    const int n = f.ndim();
    ValueShape out_shape;
    switch (f.shape()) {
    case ValueShape::vector: out_shape = ValueShape::scalar; break;
    case ValueShape::matrix: out_shape = ValueShape::vector; break;
    case ValueShape::tensor3: out_shape = ValueShape::matrix; break;
    default: throw InvalidArgument("div: not defined for scalar fields");
    }
    PolyField out(n, out_shape);
    const int outer = f.value_size() / n;
    for (int k = 0; k < n; ++k) {
        const PolyField dk = f.derivative(k);
        for (const auto& [e, v] : dk.terms())
            for (int i = 0; i < outer; ++i) out.add_to(e, i, v[static_cast<std::size_t>(i * n + k)]);
    }
    return out;
}

PolyField curl(const PolyField& f) {
    require_3d(f.ndim(), "curl");
    if (f.shape() != ValueShape::vector && f.shape() != ValueShape::matrix)
        throw InvalidArgument("curl: supported for vector and matrix fields");
    const int rows = f.shape() == ValueShape::vector ? 1 : 3;
    PolyField out(3, f.shape());
    const PolyField d[3] = {f.derivative(0), f.derivative(1), f.derivative(2)};
    // (curl v)_a = d_b v_c - d_c v_b for cyclic (a,b,c).
    for (int r = 0; r < rows; ++r)
        for (int a = 0; a < 3; ++a) {
            const int b = (a + 1) % 3;
            const int c = (a + 2) % 3;
            for (const auto& [e, v] : d[b].terms()) out.add_to(e, r * 3 + a, v[static_cast<std::size_t>(r * 3 + c)]);
            for (const auto& [e, v] : d[c].terms()) out.add_to(e, r * 3 + a, -v[static_cast<std::size_t>(r * 3 + b)]);
        }
    return out;
}

PolyField transpose(const PolyField& m) {
    require_shape(m, ValueShape::matrix, "transpose");
    const int n = m.ndim();
    return m.map_values(ValueShape::matrix, [n](std::span<const double> in, std::span<double> out) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i * n + j)] = in[static_cast<std::size_t>(j * n + i)];
    });
}

PolyField sym(const PolyField& m) { return (m + transpose(m)) * 0.5; }
PolyField skw(const PolyField& m) { return (m - transpose(m)) * 0.5; }

PolyField trace(const PolyField& m) {
    require_shape(m, ValueShape::matrix, "trace");
    const int n = m.ndim();
    return m.map_values(ValueShape::scalar, [n](std::span<const double> in, std::span<double> out) {
        for (int i = 0; i < n; ++i) out[0] += in[static_cast<std::size_t>(i * n + i)];
    });
}

PolyField dev(const PolyField& m) {
    require_shape(m, ValueShape::matrix, "dev");
    const int n = m.ndim();
    return m.map_values(ValueShape::matrix, [n](std::span<const double> in, std::span<double> out) {
        double tr = 0.0;
        for (int i = 0; i < n; ++i) tr += in[static_cast<std::size_t>(i * n + i)];
        for (int i = 0; i < n * n; ++i) out[static_cast<std::size_t>(i)] = in[static_cast<std::size_t>(i)];
        for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i * n + i)] -= tr / n;
    });
}

PolyField xi(const PolyField& m) {
    require_shape(m, ValueShape::matrix, "xi");
    require_3d(m.ndim(), "xi");
    return m.map_values(ValueShape::matrix, [](std::span<const double> in, std::span<double> out) {
        Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>> a(in.data());
        Eigen::Map<Eigen::Matrix<double, 3, 3, Eigen::RowMajor>> b(out.data());
        b = xi(Eigen::Matrix3d(a));
    });
}

PolyField xi_inv(const PolyField& m) {
    require_shape(m, ValueShape::matrix, "xi_inv");
    require_3d(m.ndim(), "xi_inv");
    return m.map_values(ValueShape::matrix, [](std::span<const double> in, std::span<double> out) {
        Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>> a(in.data());
        Eigen::Map<Eigen::Matrix<double, 3, 3, Eigen::RowMajor>> b(out.data());
        b = xi_inv(Eigen::Matrix3d(a));
    });
}

PolyField mskw(const PolyField& v) {
    require_shape(v, ValueShape::vector, "mskw");
    require_3d(v.ndim(), "mskw");
    return v.map_values(ValueShape::matrix, [](std::span<const double> in, std::span<double> out) {
        Eigen::Map<Eigen::Matrix<double, 3, 3, Eigen::RowMajor>> b(out.data());
        b = mskw(Eigen::Vector3d(in[0], in[1], in[2]));
    });
}

PolyField vskw(const PolyField& m) {
    require_shape(m, ValueShape::matrix, "vskw");
    require_3d(m.ndim(), "vskw");
    return m.map_values(ValueShape::vector, [](std::span<const double> in, std::span<double> out) {
        Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>> a(in.data());
        const Eigen::Vector3d v = vskw(Eigen::Matrix3d(a));
        out[0] = v(0);
        out[1] = v(1);
        out[2] = v(2);
    });
}

PolyField dd_operator(const PolyField& eta, double tol) {
    if (eta.shape() == ValueShape::matrix) {
        const int n = eta.ndim();
        for (const auto& [e, v] : eta.terms())
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (std::abs(v[static_cast<std::size_t>(i * n + j)] + v[static_cast<std::size_t>(j * n + i)]) > tol)
                        throw InvalidArgument("dd_operator: matrix input must be skew");
        return div(eta);
    }
    if (eta.shape() == ValueShape::tensor3) {
        check_skew_last_two(eta, tol, "dd_operator");
        return div(eta);
    }
    throw InvalidArgument("dd_operator: expects a K-valued or (V x K)-valued field");
}

PolyField theta(const PolyField& a, double tol) {
    require_shape(a, ValueShape::tensor3, "theta");
    check_skew_last_two(a, tol, "theta");
    const int n = a.ndim();
    return a.map_values(ValueShape::tensor3, [n](std::span<const double> in, std::span<double> out) {
        Tensor3 t(n);
        std::copy(in.begin(), in.end(), t.data.begin());
        const Tensor3 r = theta(t, std::numeric_limits<double>::infinity());
        std::copy(r.data.begin(), r.data.end(), out.begin());
    });
}

PolyField theta_inv(const PolyField& b, double tol) {
    require_shape(b, ValueShape::tensor3, "theta_inv");
    check_skew_first_two(b, tol, "theta_inv");
    const int n = b.ndim();
    return b.map_values(ValueShape::tensor3, [n](std::span<const double> in, std::span<double> out) {
        Tensor3 t(n);
        std::copy(in.begin(), in.end(), t.data.begin());
        const Tensor3 r = theta_inv(t, std::numeric_limits<double>::infinity());
        std::copy(r.data.begin(), r.data.end(), out.begin());
    });
}

PolyField random_skew_field(int ndim, int degree, std::mt19937_64& rng) {
    const PolyField m = PolyField::random(ndim, ValueShape::matrix, degree, rng);
    return m - transpose(m);
}

PolyField random_vk_field(int ndim, int degree, std::mt19937_64& rng) {
    const PolyField t = PolyField::random(ndim, ValueShape::tensor3, degree, rng);
    const int n = ndim;
    return t.map_values(ValueShape::tensor3, [n](std::span<const double> in, std::span<double> out) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    out[static_cast<std::size_t>((i * n + j) * n + k)] =
                        in[static_cast<std::size_t>((i * n + j) * n + k)] - in[static_cast<std::size_t>((i * n + k) * n + j)];
    });
}

}  // namespace alfeld
