#include "alfeld/verification.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "alfeld/assembly.hpp"
#include "alfeld/constraints.hpp"
#include "alfeld/quadrature.hpp"
#include "alfeld/tensor_calculus.hpp"

namespace alfeld {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

template <class S>
DenseRows<S> stacked(std::initializer_list<DenseRows<S>> parts) {
    DenseRows<S> all;
    for (const auto& p : parts) append_rows(all, p);
    return all;
}

/// Rank of a double matrix by SVD after row normalization (relative threshold 1e-10).
int float_rank(const DenseRows<double>& rows, int cols) {
    if (rows.empty()) return 0;
    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int c = 0; c < cols; ++c) a(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
        const double n = a.row(static_cast<Eigen::Index>(r)).norm();
        if (n > 0.0) a.row(static_cast<Eigen::Index>(r)) /= n;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-10 * sv(0)) ++rank;
    return rank;
}

std::vector<Coords<double>> reference_simplex_double(int ndim) {
    std::vector<Coords<double>> v(static_cast<std::size_t>(ndim + 1), Coords<double>(static_cast<std::size_t>(ndim), 0.0));
    for (int i = 0; i < ndim; ++i) v[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] = 1.0;
    return v;
}

Mat3 to_mat3(const std::vector<double>& v) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = v[static_cast<std::size_t>(i * 3 + j)];
    return m;
}

Vec3 to_vec3(const std::vector<double>& v) { return Vec3(v[0], v[1], v[2]); }

PolyField random_symmetric(int degree, std::mt19937_64& rng) {
    return sym(PolyField::random(3, ValueShape::matrix, degree, rng));
}

MatrixField as_matrix_field(const PolyField& p) {
    return [p](const Vec3& x) {
        const double xs[3] = {x(0), x(1), x(2)};
        return to_mat3(p.evaluate(xs));
    };
}

Vec3 eval_vec(const PolyField& p, const Vec3& x) {
    const double xs[3] = {x(0), x(1), x(2)};
    return to_vec3(p.evaluate(xs));
}

}  // namespace

// ---------------------------------------------------------------------------

bool VerificationReport::pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
}

void VerificationReport::append(const VerificationReport& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

std::string VerificationReport::text() const {
    std::size_t w = 4;
    for (const auto& e : entries) w = std::max(w, e.name.size());
    std::ostringstream out;
    out << "seed " << seed << "\n";
    for (const auto& e : entries) {
        out << std::left << std::setw(static_cast<int>(w) + 2) << e.name << (e.pass ? "PASS  " : "FAIL  ")
            << std::setw(14) << fmt(e.value) << e.detail;
        if (!e.certifies.empty()) out << "  [" << e.certifies << "]";
        out << "\n";
    }
    out << "overall " << (pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string VerificationReport::summary() const {
    std::ostringstream out;
    for (const auto& e : entries) out << e.name << ' ' << (e.pass ? "PASS" : "FAIL") << ' ' << fmt(e.value) << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Exact counts

int sigma_dimension_formula(int ndim) { return (2 * ndim + 1) * ndim * (ndim + 1) / 2; }

DimensionCounts dimension_counts(int ndim) {
    ALFELD_REQUIRE(ndim >= 2 && ndim <= 4, InvalidArgument, "dimension_counts: ndim must be 2, 3 or 4");
    const auto g = make_split_geometry(reference_simplex_rational(ndim));
    DimensionCounts c;
    c.ndim = ndim;
    const RawLayout ls(ndim, true), lf(ndim, false);
    c.raw_sym = ls.size();
    c.continuity_rank = exact_rank(continuity_rows(g, ls));
    c.sigma_dim = c.raw_sym - c.continuity_rank;
    const auto cont_full = continuity_rows(g, lf);
    c.bdm_dim = lf.size() - exact_rank(cont_full);
    c.skew_dim = (ndim + 1) * (ndim + 1) * ndim * (ndim - 1) / 2;
    c.bdm_skew_rank = exact_rank(stacked<Rational>({cont_full, skew_rows(g, lf)}));
    return c;
}

CheckEntry check_dimension_formula(int ndim) {
    const DimensionCounts c = dimension_counts(ndim);
    const int formula = sigma_dimension_formula(ndim);
    const int bdm_formula = (ndim + 2) * (ndim + 1) * ndim * ndim / 2;
    const int skew_formula = ndim * (ndim - 1) * (ndim + 1) * (ndim + 1) / 2;
    // The symmetric space is the kernel of skw on BDM1: its dimension must also
    // be dim BDM1 - dim P1(K) (skw onto).
    const int via_skew = RawLayout(ndim, false).size() - c.bdm_skew_rank;
    CheckEntry e;
    e.name = "dimension_formula_N" + std::to_string(ndim);
    e.value = c.sigma_dim;
    e.pass = c.sigma_dim == formula && c.bdm_dim == bdm_formula && c.skew_dim == skew_formula && via_skew == formula &&
             c.bdm_dim - c.skew_dim == formula;
    std::ostringstream d;
    d << "dim Sigma " << c.sigma_dim << " (formula " << formula << "), BDM1 " << c.bdm_dim << " (formula " << bdm_formula
      << "), P1(K) " << c.skew_dim << ", ker skw on BDM1 " << via_skew << ", exact rational rank";
    e.detail = d.str();
    e.certifies = "dim Sigma_h(T) = (N+1/2)N(N+1)";
    return e;
}

int exact_variant_dimension(StressVariant variant) {
    const auto g = make_split_geometry(reference_simplex_rational(3));
    const RawLayout L(3, true);
    auto rows = continuity_rows(g, L);
    if (variant == StressVariant::reduced) {
        append_rows(rows, facet_rigid_rows(g, L));
        append_rows(rows, div_rigid_rows(g, L));
    } else if (variant == StressVariant::reduced2) {
        append_rows(rows, facet_constant_rows(g, L));
        append_rows(rows, div_rigid_rows(g, L));
    }
    return L.size() - exact_rank(std::move(rows));
}

CheckEntry check_exact_dimension(StressVariant variant) {
    CheckEntry e;
    e.name = "exact_dimension_" + to_string(variant);
    const int dim = exact_variant_dimension(variant);
    e.value = dim;
    e.pass = dim == stress_dim(variant);
    e.detail = "96 raw unknowns, exact rational rank, expected " + std::to_string(stress_dim(variant));
    e.certifies = "dimension of the local stress space";
    return e;
}

KernelResult kernel_rank(int ndim, bool float_cross_check) {
    ALFELD_REQUIRE(ndim >= 2 && ndim <= 4, InvalidArgument, "kernel_rank: ndim must be 2, 3 or 4");
    const RawLayout L(ndim, true);
    KernelResult r;
    r.unknowns = L.size();
    const auto g = make_split_geometry(reference_simplex_rational(ndim));
    auto rows = stacked<Rational>({continuity_rows(g, L), boundary_trace_rows(g, L), divergence_rows(g, L)});
    r.rows = static_cast<int>(rows.size());
    r.exact_rank = exact_rank(std::move(rows));
    if (float_cross_check) {
        const auto gd = make_split_geometry(reference_simplex_double(ndim));
        const auto fr = stacked<double>({continuity_rows(gd, L), boundary_trace_rows(gd, L), divergence_rows(gd, L)});
        r.float_rank = float_rank(fr, L.size());
    }
    return r;
}

CheckEntry check_kernel_trivial(int ndim) {
    const KernelResult r = kernel_rank(ndim, ndim <= 3);
    CheckEntry e;
    e.name = "kernel_trivial_N" + std::to_string(ndim);
    e.value = r.nullity();
    e.pass = r.nullity() == 0 && (r.float_rank < 0 || r.float_rank == r.exact_rank);
    std::ostringstream d;
    d << "nullity " << r.nullity() << " of " << r.unknowns << " unknowns, " << r.rows << " rows, exact rank "
      << r.exact_rank;
    if (r.float_rank >= 0) d << ", SVD rank " << r.float_rank;
    e.detail = d.str();
    e.certifies = "divergence-free elements with vanishing traces are zero";
    return e;
}

CheckEntry check_unisolvency(StressVariant variant, int ntrials, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = std::numeric_limits<double>::infinity();
    double worst_rel = std::numeric_limits<double>::infinity();
    double worst_quality = 1.0;
    int done = 0;
    std::string failure;
    for (int t = 0; t <= ntrials; ++t) {
        std::array<Vec3, 4> v;
        if (t == 0) {
            v = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
        } else {
            for (;;) {
                for (auto& p : v) p = Vec3(U(rng), U(rng), U(rng));
                Mat3 j;
                for (int i = 0; i < 3; ++i) j.col(i) = v[static_cast<std::size_t>(i + 1)] - v[0];
                if (j.determinant() < 0.0) std::swap(v[1], v[2]);
                double diam = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = a + 1; b < 4; ++b) diam = std::max(diam, (v[static_cast<std::size_t>(a)] - v[static_cast<std::size_t>(b)]).norm());
                const double q = std::abs(j.determinant()) / (diam * diam * diam);
                if (q > kMinTetQuality) {
                    worst_quality = std::min(worst_quality, q);
                    break;
                }
            }
        }
        // Unit-diameter normalization.
        double diam = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) diam = std::max(diam, (v[static_cast<std::size_t>(a)] - v[static_cast<std::size_t>(b)]).norm());
        const Vec3 c = (v[0] + v[1] + v[2] + v[3]) / 4.0;
        for (auto& p : v) p = (p - c) / diam;
        try {
            const LocalBasis lb = build_stress_basis(macro_geometry(v), variant);
            worst = std::min(worst, lb.dof_sigma_min);
            worst_rel = std::min(worst_rel, lb.dof_sigma_min / lb.dof_sigma_max);
            ++done;
        } catch (const Error& ex) {
            failure = ex.what();
            worst = 0.0;
            break;
        }
    }
    CheckEntry e;
    e.name = "unisolvency_" + to_string(variant);
    e.value = worst;
    e.pass = failure.empty() && worst > 1e-8;
    std::ostringstream d;
    d << "dim " << stress_dim(variant) << ", reference + " << ntrials << " random tets (quality >= " << worst_quality
      << "), min sigma " << worst << ", min sigma/max sigma " << worst_rel;
    if (!failure.empty()) d << ", failure after " << done << ": " << failure;
    e.detail = d.str();
    e.certifies = "DOFs are unisolvent";
    return e;
}

// ---------------------------------------------------------------------------
// Commuting interpolants

namespace {

/// (div(Pi w - w), v_k) and (div w, v_k) for every global displacement test function.
std::pair<Eigen::VectorXd, Eigen::VectorXd> commuting_pairings(const Discretization& d, const PolyField& w) {
    const PolyField dw = div(w);
    const StressField pi = make_stress_field(d, canonical_interpolant(d, as_matrix_field(w)));
    const std::vector<Vec3> dpi = subtet_divergence(d, pi);
    const auto& rule = simplex_rule(3, 4);
    const auto& cx = d.mesh->complex;
    Eigen::VectorXd res = Eigen::VectorXd::Zero(d.table.n_disp);
    Eigen::VectorXd ref = Eigen::VectorXd::Zero(d.table.n_disp);
    for (int c = 0; c < d.num_cells(); ++c) {
        const auto& g = d.geometry[static_cast<std::size_t>(c)];
        const auto uv = d.disp_vertex_values(c);
        const auto& dofs = d.table.cell_disp[static_cast<std::size_t>(c)];
        for (int s = 0; s < 4; ++s) {
            const auto su = static_cast<std::size_t>(s);
            const Vec3 dp = dpi[static_cast<std::size_t>(cx.subcell(c, s))];
            for (std::size_t q = 0; q < rule.size(); ++q) {
                Vec3 x = Vec3::Zero();
                Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(3, uv[su].cols());
                for (int v = 0; v < 4; ++v) {
                    const double l = rule.points[q][static_cast<std::size_t>(v)];
                    x += l * g.sub_vertex[su][static_cast<std::size_t>(v)];
                    phi += l * uv[su].middleRows(v * 3, 3);
                }
                const double wq = 6.0 * g.sub_volume[su] * rule.weights[q];
                const Vec3 dx = eval_vec(dw, x);
                const Eigen::VectorXd a = wq * phi.transpose() * (dp - dx);
                const Eigen::VectorXd b = wq * phi.transpose() * dx;
                for (std::size_t k = 0; k < dofs.size(); ++k) {
                    res(dofs[k]) += a(static_cast<Eigen::Index>(k));
                    ref(dofs[k]) += b(static_cast<Eigen::Index>(k));
                }
            }
        }
    }
    return {res, ref};
}

std::string method_label(const Discretization& d) {
    switch (d.method.id) {
        case MethodId::reduced: return "R";
        case MethodId::reduced2: return "R2";
        default: return "full";
    }
}

}  // namespace

CheckEntry check_commuting_weak(const Discretization& d, int nfields, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int k = 0; k < nfields; ++k) {
        const auto [res, ref] = commuting_pairings(d, random_symmetric(3, rng));
        worst = std::max(worst, res.lpNorm<Eigen::Infinity>() / std::max(ref.lpNorm<Eigen::Infinity>(), 1e-300));
    }
    CheckEntry e;
    e.name = "commuting_weak_" + method_label(d);
    e.value = worst;
    e.pass = worst <= 1e-9;
    e.detail = std::to_string(nfields) + " random degree-3 fields, tests in " +
               to_string(displacement_space(d.method)) + ", max relative pairing";
    e.certifies = "(div(Pi w - w), v) = 0";
    return e;
}

CheckEntry check_commuting_strong(const Discretization& d, int nfields, std::mt19937_64& rng) {
    double worst = 0.0;
    double worst_div_free = 0.0;
    for (int k = 0; k < nfields; ++k) {
        const PolyField phi = random_symmetric(5, rng);
        const PolyField inc = sym(curl(transpose(curl(phi))));
        const PolyField w = random_symmetric(1, rng) + inc * (1.0 / std::max(inc.max_abs_coeff(), 1.0));
        worst_div_free = std::max(worst_div_free, div(inc).max_abs_coeff() / std::max(inc.max_abs_coeff(), 1.0));
        const PolyField dw = div(w);
        const StressField pi = make_stress_field(d, canonical_interpolant(d, as_matrix_field(w)));
        const std::vector<Vec3> dpi = subtet_divergence(d, pi);
        double scale = 0.0, diff = 0.0;
        for (std::size_t f = 0; f < dpi.size(); ++f) {
            const auto& fine = d.mesh->complex.fine;
            const Vec3 x = fine.cell_geometry(static_cast<int>(f)).centroid();
            const Vec3 exact = eval_vec(dw, x);
            scale = std::max(scale, exact.norm());
            diff = std::max(diff, (dpi[f] - exact).norm());
        }
        worst = std::max(worst, diff / std::max(scale, 1e-300));
    }
    CheckEntry e;
    e.name = "commuting_strong_" + method_label(d);
    e.value = worst;
    e.pass = worst <= 1e-9 && worst_div_free <= 1e-12;
    e.detail = std::to_string(nfields) + " fields (affine + inc potential, |div inc| " + fmt(worst_div_free) +
               "), max |div(Pi w - w)| per subtet, relative";
    e.certifies = "div(Pi w - w) = 0 when div w in W_h";
    return e;
}

VerificationReport check_commuting(int cube_n, int nfields, std::uint64_t seed) {
    VerificationReport rep;
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    auto mesh = std::make_shared<const SplitMesh>(generate_cube_mesh(cube_n));
    for (MethodId id : {MethodId::jkm, MethodId::reduced, MethodId::reduced2}) {
        MethodConfig m;
        m.id = id;
        const auto d = build_discretization(mesh, m);
        rep.add(check_commuting_weak(*d, nfields, rng));
        if (id == MethodId::jkm) rep.add(check_commuting_strong(*d, nfields, rng));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// BGG identities

VerificationReport check_bgg(int ndim, int ntrials, std::mt19937_64& rng) {
    VerificationReport rep;
    const std::string suffix = "_N" + std::to_string(ndim);
    auto entry = [&](const std::string& name, double worst, double tol, const std::string& what) {
        CheckEntry e;
        e.name = name + suffix;
        e.value = worst;
        e.pass = worst <= tol;
        e.detail = std::to_string(ntrials) + " random fields, max coefficient residual";
        e.certifies = what;
        rep.add(e);
    };
    constexpr int deg = 3;
    if (ndim == 3) {
        double w = 0.0;
        for (int t = 0; t < ntrials; ++t) {
            const PolyField u = PolyField::random(3, ValueShape::matrix, deg, rng);
            w = std::max(w, (div(xi(u)) - vskw(curl(u)) * 2.0).max_abs_coeff());
        }
        entry("bgg_div_xi", w, 1e-12, "div Xi u = 2 vskw curl u");
    }
    double w1 = 0.0, w2 = 0.0, w3 = 0.0;
    for (int t = 0; t < ntrials; ++t) {
        w1 = std::max(w1, div(dd_operator(random_skew_field(ndim, deg, rng))).max_abs_coeff());
        const PolyField om = random_vk_field(ndim, deg, rng);
        w2 = std::max(w2, div(dd_operator(om)).max_abs_coeff());
        w3 = std::max(w3, (div(theta(om)) - skw(dd_operator(om)) * 2.0).max_abs_coeff());
    }
    entry("bgg_div_d_skew", w1, 1e-12, "div d eta = 0 for K-valued eta");
    entry("bgg_div_d_vk", w2, 1e-12, "div d w = 0 for (V x K)-valued w");
    entry("bgg_div_theta", w3, 1e-12, "div Theta w = 2 skw d w");

    // Trace lemma: eta = l * rho vanishes on the hyperplane {l = 0}.
    std::normal_distribution<double> G(0.0, 1.0);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double wt = 0.0;
    const int trace_trials = std::max(1, ntrials / 10);
    for (int t = 0; t < trace_trials; ++t) {
        std::vector<double> n(static_cast<std::size_t>(ndim));
        double nn = 0.0;
        for (auto& x : n) {
            x = G(rng);
            nn += x * x;
        }
        for (auto& x : n) x /= std::sqrt(nn);
        const double c = U(rng);
        const PolyField rho = random_skew_field(ndim, deg, rng);
        const PolyField eta = rho.times(PolyField::affine(-c, n));
        const PolyField deta = dd_operator(eta);
        for (int p = 0; p < 20; ++p) {
            std::vector<double> x(static_cast<std::size_t>(ndim));
            double dotn = 0.0;
            for (int i = 0; i < ndim; ++i) {
                x[static_cast<std::size_t>(i)] = U(rng);
                dotn += x[static_cast<std::size_t>(i)] * n[static_cast<std::size_t>(i)];
            }
            for (int i = 0; i < ndim; ++i) x[static_cast<std::size_t>(i)] -= (dotn - c) * n[static_cast<std::size_t>(i)];
            const auto v = deta.evaluate(x);
            double s = 0.0;
            for (int i = 0; i < ndim; ++i) s += v[static_cast<std::size_t>(i)] * n[static_cast<std::size_t>(i)];
            wt = std::max(wt, std::abs(s));
        }
    }
    CheckEntry e;
    e.name = "trace_lemma" + suffix;
    e.value = wt;
    e.pass = wt <= 1e-10;
    e.detail = std::to_string(trace_trials) + " hyperplanes x 20 points, max |d eta . n|";
    e.certifies = "d eta . n vanishes on Gamma";
    rep.add(e);
    return rep;
}

// ---------------------------------------------------------------------------
// Inf-sup

double estimate_infsup(const Discretization& d) {
    ALFELD_REQUIRE(d.method.id != MethodId::weaksym, InvalidArgument, "estimate_infsup: symmetric-stress methods only");
    const ComplianceTensor material = parse_material("iso:E=1,nu=0.3");
    const LoadField zero = [](int, const Vec3&) { return Vec3(Vec3::Zero()); };
    const AssembledSystem sys = assemble(d, material, zero);
    const int ns = d.table.n_stress, nd = d.table.n_disp;
    const Eigen::MatrixXd full(sys.system.matrix);
    const Eigen::MatrixXd B = full.block(ns, 0, nd, ns);
    const StressGrams grams = stress_grams(d);
    const Eigen::MatrixXd N = Eigen::MatrixXd(grams.l2) + Eigen::MatrixXd(grams.div);
    const Eigen::MatrixXd L(displacement_mass(d));
    Eigen::LLT<Eigen::MatrixXd> llt(N);
    ALFELD_REQUIRE(llt.info() == Eigen::Success, NumericalError, "estimate_infsup: stress norm matrix not positive definite");
    const Eigen::MatrixXd X = llt.matrixL().solve(B.transpose());  // L^{-1} B^T
    const Eigen::MatrixXd S = X.transpose() * X;                    // B N^{-1} B^T
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(S, L, Eigen::EigenvaluesOnly);
    ALFELD_REQUIRE(es.info() == Eigen::Success, NumericalError, "estimate_infsup: eigensolver failed");
    return std::sqrt(std::max(es.eigenvalues()(0), 0.0));
}

CheckEntry check_infsup(MethodId method) {
    MethodConfig m;
    m.id = method;
    std::array<double, 2> beta{};
    for (int n = 1; n <= 2; ++n) {
        auto mesh = std::make_shared<const SplitMesh>(generate_cube_mesh(n));
        beta[static_cast<std::size_t>(n - 1)] = estimate_infsup(*build_discretization(mesh, m));
    }
    CheckEntry e;
    e.name = "infsup_" + to_string(method);
    e.value = std::min(beta[0], beta[1]);
    e.pass = beta[0] > 1e-3 && beta[1] > 1e-3 && beta[1] >= 0.8 * beta[0];
    e.detail = "beta_h(n=1) " + fmt(beta[0]) + ", beta_h(n=2) " + fmt(beta[1]) +
               "; two-level evidence of a uniform bound, not a proof";
    e.certifies = "discrete inf-sup stability";
    return e;
}

// ---------------------------------------------------------------------------

VerificationReport run_verification(const VerifyOptions& o) {
    VerificationReport rep;
    rep.seed = o.seed;
    std::mt19937_64 rng(o.seed);
    const bool three = std::find(o.ndims.begin(), o.ndims.end(), 3) != o.ndims.end();
    if (three) {
        for (StressVariant v : {StressVariant::full, StressVariant::reduced, StressVariant::reduced2}) {
            rep.add(check_exact_dimension(v));
            rep.add(check_unisolvency(v, o.trials, rng));
        }
    }
    for (int n : o.ndims) {
        rep.add(check_dimension_formula(n));
        rep.add(check_kernel_trivial(n));
    }
    for (int n : o.ndims) rep.append(check_bgg(n, o.bgg_fields, rng));
    if (three) {
        rep.append(check_commuting(1, o.commuting_fields, rng()));
        if (o.infsup)
            for (MethodId id : {MethodId::jkm, MethodId::reduced, MethodId::reduced2}) rep.add(check_infsup(id));
    }
    return rep;
}

}  // namespace alfeld
