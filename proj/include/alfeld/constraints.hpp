#pragma once

// Linear constraints on piecewise-linear matrix fields over the Alfeld split
// of one N-simplex, generic in the scalar type (double or Rational).
//
// Raw unknowns: for each subcell s (N+1), each vertex slot v (N+1) and each
// matrix component c, the nodal value S^s_v[c]. Subcell s is the macro simplex
// with vertex slot s replaced by the split point z. Components are either the
// upper triangle (i <= j, row-major) of a symmetric matrix, or all N^2 entries.

#include <utility>
#include <vector>

#include "alfeld/rational.hpp"

namespace alfeld {

template <class S>
using Coords = std::vector<S>;

struct RawLayout {
    int ndim = 3;
    bool symmetric = true;

    RawLayout(int n, bool sym) : ndim(n), symmetric(sym) {}
    int num_components() const { return symmetric ? ndim * (ndim + 1) / 2 : ndim * ndim; }
    int num_slots() const { return ndim + 1; }
    int size() const { return num_slots() * num_slots() * num_components(); }
    int index(int s, int v, int c) const { return (s * num_slots() + v) * num_components() + c; }
    /// Component holding matrix entry (i, j).
    int component(int i, int j) const {
        if (!symmetric) return i * ndim + j;
        if (i > j) std::swap(i, j);
        return i * ndim - i * (i - 1) / 2 + (j - i);
    }
    /// Entry (i, j) of component c (for symmetric layouts, i <= j).
    std::pair<int, int> entry(int c) const {
        if (!symmetric) return {c / ndim, c % ndim};
        int i = 0;
        while (c >= ndim - i) {
            c -= ndim - i;
            ++i;
        }
        return {i, i + c};
    }
};

/// Geometry of the Alfeld split of one simplex in exact or floating arithmetic.
template <class S>
struct SplitGeometry {
    int ndim = 0;
    std::vector<Coords<S>> p;  ///< macro vertices
    Coords<S> z;               ///< split point (barycenter)
    /// grad_lambda[s][v]: gradient of the barycentric coordinate of slot v on subcell s.
    std::vector<std::vector<Coords<S>>> grad_lambda;
    std::vector<S> sub_volume;  ///< |T_s| (positive)
    /// lambda_macro[K][j] = lambda_j(x_K), x_K the centroid of subcell K.
    DenseRows<S> centroid_bary;

    const Coords<S>& vertex(int s, int v) const { return v == s ? z : p[static_cast<std::size_t>(v)]; }
};

template <class S>
Coords<S> sub(const Coords<S>& a, const Coords<S>& b) {
    Coords<S> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <class S>
S dot(const Coords<S>& a, const Coords<S>& b) {
    S r(0);
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

/// Normal (not normalized) to the hyperplane through N points in R^N:
/// generalized cross product of the edge vectors.
template <class S>
Coords<S> hyperplane_normal(const std::vector<Coords<S>>& pts) {
    const std::size_t n = pts[0].size();
    DenseRows<S> e;
    for (std::size_t i = 1; i < pts.size(); ++i) e.push_back(sub(pts[i], pts[0]));
    Coords<S> nrm(n, S(0));
    for (std::size_t k = 0; k < n; ++k) {
        DenseRows<S> minor(n - 1, std::vector<S>());
        for (std::size_t r = 0; r + 1 < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (c != k) minor[r].push_back(e[r][c]);
        const S d = n == 1 ? S(1) : determinant(minor);
        nrm[k] = (k % 2 == 0) ? d : S(-d);
    }
    return nrm;
}

template <class S>
SplitGeometry<S> make_split_geometry(const std::vector<Coords<S>>& verts) {
    SplitGeometry<S> g;
    g.ndim = static_cast<int>(verts[0].size());
    const int n = g.ndim;
    ALFELD_REQUIRE(static_cast<int>(verts.size()) == n + 1, InvalidArgument, "split geometry: need N+1 vertices");
    g.p = verts;
    g.z.assign(static_cast<std::size_t>(n), S(0));
    for (const auto& v : verts)
        for (int i = 0; i < n; ++i) g.z[static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(i)];
    for (auto& zi : g.z) zi /= S(n + 1);

    S fact(1);
    for (int i = 2; i <= n; ++i) fact *= S(i);
    g.grad_lambda.resize(static_cast<std::size_t>(n + 1));
    g.sub_volume.resize(static_cast<std::size_t>(n + 1));
    for (int s = 0; s <= n; ++s) {
        DenseRows<S> jac = zero_rows<S>(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c) {
            const auto e = sub(g.vertex(s, c + 1), g.vertex(s, 0));
            for (int r = 0; r < n; ++r) jac[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = e[static_cast<std::size_t>(r)];
        }
        const S det = determinant(jac);
        ALFELD_REQUIRE(to_double(det) > 0.0, InvalidArgument, "split geometry: subcell not positively oriented");
        g.sub_volume[static_cast<std::size_t>(s)] = det / fact;
        const auto inv = inverse(jac);
        auto& gl = g.grad_lambda[static_cast<std::size_t>(s)];
        gl.assign(static_cast<std::size_t>(n + 1), Coords<S>(static_cast<std::size_t>(n), S(0)));
        for (int v = 1; v <= n; ++v)
            for (int j = 0; j < n; ++j) {
                gl[static_cast<std::size_t>(v)][static_cast<std::size_t>(j)] = inv[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>(j)];
                gl[0][static_cast<std::size_t>(j)] -= inv[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>(j)];
            }
    }
    // Centroid of subcell K in macro barycentric coordinates.
    g.centroid_bary = zero_rows<S>(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
    const S zc = S(1) / S((n + 1) * (n + 1));
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j)
            g.centroid_bary[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = (j == k ? S(0) : S(1) / S(n + 1)) + zc;
    return g;
}

// ---------------------------------------------------------------------------
// Row builders. Each returns rows over the raw layout.

namespace detail {

template <class S>
void add_row_entry(std::vector<S>& row, const RawLayout& L, int s, int v, int i, int j, const S& val) {
    if (is_zero(val)) return;
    row[static_cast<std::size_t>(L.index(s, v, L.component(i, j)))] += val;
}

}  // namespace detail

/// Normal continuity across the N(N+1)/2 internal facets, at every common vertex.
template <class S>
DenseRows<S> continuity_rows(const SplitGeometry<S>& g, const RawLayout& L) {
    const int n = g.ndim;
    DenseRows<S> rows;
    for (int s = 0; s <= n; ++s)
        for (int t = s + 1; t <= n; ++t) {
            // Common vertices: z (slot s in T_s, slot t in T_t) and p_v, v != s, t.
            std::vector<std::pair<int, int>> slots{{s, t}};
            std::vector<Coords<S>> pts{g.z};
            for (int v = 0; v <= n; ++v)
                if (v != s && v != t) {
                    slots.emplace_back(v, v);
                    pts.push_back(g.p[static_cast<std::size_t>(v)]);
                }
            const auto nrm = hyperplane_normal(pts);
            for (const auto& [vs, vt] : slots)
                for (int i = 0; i < n; ++i) {
                    std::vector<S> row(static_cast<std::size_t>(L.size()), S(0));
                    for (int j = 0; j < n; ++j) {
                        detail::add_row_entry(row, L, s, vs, i, j, nrm[static_cast<std::size_t>(j)]);
                        detail::add_row_entry(row, L, t, vt, i, j, S(-nrm[static_cast<std::size_t>(j)]));
                    }
                    rows.push_back(std::move(row));
                }
        }
    return rows;
}

/// Points of the macro facet opposite vertex m, and the slots carrying them in subcell m.
template <class S>
std::vector<int> facet_slots(const SplitGeometry<S>& g, int m) {
    std::vector<int> slots;
    for (int v = 0; v <= g.ndim; ++v)
        if (v != m) slots.push_back(v);
    return slots;
}

template <class S>
Coords<S> macro_facet_normal(const SplitGeometry<S>& g, int m) {
    std::vector<Coords<S>> pts;
    for (int v : facet_slots(g, m)) pts.push_back(g.p[static_cast<std::size_t>(v)]);
    return hyperplane_normal(pts);
}

/// omega n = 0 on the macro boundary (at every facet vertex).
template <class S>
DenseRows<S> boundary_trace_rows(const SplitGeometry<S>& g, const RawLayout& L) {
    const int n = g.ndim;
    DenseRows<S> rows;
    for (int m = 0; m <= n; ++m) {
        const auto nrm = macro_facet_normal(g, m);
        for (int v : facet_slots(g, m))
            for (int i = 0; i < n; ++i) {
                std::vector<S> row(static_cast<std::size_t>(L.size()), S(0));
                for (int j = 0; j < n; ++j) detail::add_row_entry(row, L, m, v, i, j, nrm[static_cast<std::size_t>(j)]);
                rows.push_back(std::move(row));
            }
    }
    return rows;
}

/// Row-wise divergence on subcell s, component i, as a functional on the raw unknowns.
template <class S>
std::vector<S> divergence_functional(const SplitGeometry<S>& g, const RawLayout& L, int s, int i) {
    const int n = g.ndim;
    std::vector<S> row(static_cast<std::size_t>(L.size()), S(0));
    for (int v = 0; v <= n; ++v)
        for (int j = 0; j < n; ++j)
            detail::add_row_entry(row, L, s, v, i, j, g.grad_lambda[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)][static_cast<std::size_t>(j)]);
    return row;
}

/// div omega = 0 on every subcell.
template <class S>
DenseRows<S> divergence_rows(const SplitGeometry<S>& g, const RawLayout& L) {
    DenseRows<S> rows;
    for (int s = 0; s <= g.ndim; ++s)
        for (int i = 0; i < g.ndim; ++i) rows.push_back(divergence_functional(g, L, s, i));
    return rows;
}

/// skw S^s_v = 0 (full layouts only).
template <class S>
DenseRows<S> skew_rows(const SplitGeometry<S>& g, const RawLayout& L) {
    ALFELD_REQUIRE(!L.symmetric, InvalidArgument, "skew_rows: needs the full matrix layout");
    const int n = g.ndim;
    DenseRows<S> rows;
    for (int s = 0; s <= n; ++s)
        for (int v = 0; v <= n; ++v)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    std::vector<S> row(static_cast<std::size_t>(L.size()), S(0));
                    detail::add_row_entry(row, L, s, v, i, j, S(1));
                    detail::add_row_entry(row, L, s, v, j, i, S(-1));
                    rows.push_back(std::move(row));
                }
    return rows;
}

/// Tangential part of omega n on each macro facet is a rigid motion of the
/// facet: the P1 field omega n has zero elongation along every facet edge.
template <class S>
DenseRows<S> facet_rigid_rows(const SplitGeometry<S>& g, const RawLayout& L) {
    const int n = g.ndim;
    DenseRows<S> rows;
    for (int m = 0; m <= n; ++m) {
        const auto nrm = macro_facet_normal(g, m);
        const auto slots = facet_slots(g, m);
        for (std::size_t a = 0; a < slots.size(); ++a)
            for (std::size_t b = a + 1; b < slots.size(); ++b) {
                const auto edge = sub(g.p[static_cast<std::size_t>(slots[b])], g.p[static_cast<std::size_t>(slots[a])]);
                std::vector<S> row(static_cast<std::size_t>(L.size()), S(0));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        const S c = edge[static_cast<std::size_t>(i)] * nrm[static_cast<std::size_t>(j)];
                        detail::add_row_entry(row, L, m, slots[b], i, j, c);
                        detail::add_row_entry(row, L, m, slots[a], i, j, S(-c));
                    }
                rows.push_back(std::move(row));
            }
    }
    return rows;
}

/// omega n is constant on each macro facet.
template <class S>
DenseRows<S> facet_constant_rows(const SplitGeometry<S>& g, const RawLayout& L) {
    const int n = g.ndim;
    DenseRows<S> rows;
    for (int m = 0; m <= n; ++m) {
        const auto nrm = macro_facet_normal(g, m);
        const auto slots = facet_slots(g, m);
        for (std::size_t b = 1; b < slots.size(); ++b)
            for (int i = 0; i < n; ++i) {
                std::vector<S> row(static_cast<std::size_t>(L.size()), S(0));
                for (int j = 0; j < n; ++j) {
                    detail::add_row_entry(row, L, m, slots[b], i, j, nrm[static_cast<std::size_t>(j)]);
                    detail::add_row_entry(row, L, m, slots[0], i, j, S(-nrm[static_cast<std::size_t>(j)]));
                }
                rows.push_back(std::move(row));
            }
    }
    return rows;
}

/// div omega lies in P_T R(T). Since P_T I_T = id and I_T is a bijection
/// from W_h(T) onto V_h(T), this holds iff the P1 interpolant I_T(div omega)
/// is rigid, i.e. has zero elongation along every macro edge.
template <class S>
DenseRows<S> div_rigid_rows(const SplitGeometry<S>& g, const RawLayout& L) {
    const int n = g.ndim;
    const auto lam_inv = inverse(g.centroid_bary);  // V_j = sum_K lam_inv[j][K] w_K
    std::vector<std::vector<std::vector<S>>> divf(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k)
        for (int i = 0; i < n; ++i) divf[static_cast<std::size_t>(k)].push_back(divergence_functional(g, L, k, i));
    DenseRows<S> rows;
    for (int a = 0; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) {
            const auto edge = sub(g.p[static_cast<std::size_t>(b)], g.p[static_cast<std::size_t>(a)]);
            std::vector<S> row(static_cast<std::size_t>(L.size()), S(0));
            for (int k = 0; k <= n; ++k) {
                const S w = lam_inv[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)] - lam_inv[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)];
                if (is_zero(w)) continue;
                for (int i = 0; i < n; ++i) {
                    const S c = w * edge[static_cast<std::size_t>(i)];
                    if (is_zero(c)) continue;
                    const auto& f = divf[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
                    for (std::size_t col = 0; col < row.size(); ++col)
                        if (!is_zero(f[col])) row[col] += c * f[col];
                }
            }
            rows.push_back(std::move(row));
        }
    return rows;
}

template <class S>
void append_rows(DenseRows<S>& dst, const DenseRows<S>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

/// Reference N-simplex (origin and unit vectors) in exact arithmetic.
inline std::vector<Coords<Rational>> reference_simplex_rational(int ndim) {
    std::vector<Coords<Rational>> v(static_cast<std::size_t>(ndim + 1), Coords<Rational>(static_cast<std::size_t>(ndim), Rational(0)));
    for (int i = 0; i < ndim; ++i) v[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] = 1;
    return v;
}

}  // namespace alfeld
