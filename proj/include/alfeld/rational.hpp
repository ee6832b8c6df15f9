#pragma once

// Small dense linear algebra over a generic field: double or mpq_class.
// Used by the constraint builders, which must run both in floating point and
// in exact rational arithmetic.

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "alfeld/error.hpp"

namespace alfeld {

using Rational = mpq_class;

template <class S>
using DenseRows = std::vector<std::vector<S>>;

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Rational& x) { return std::abs(x.get_d()); }
inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

template <class S>
DenseRows<S> zero_rows(std::size_t rows, std::size_t cols) {
    return DenseRows<S>(rows, std::vector<S>(cols, S(0)));
}

namespace detail {

// Index of the pivot row in column `col` among rows [from, end).
template <class S>
std::size_t choose_pivot(const DenseRows<S>& m, std::size_t from, std::size_t col) {
    std::size_t best = m.size();
    double best_mag = 0.0;
    for (std::size_t r = from; r < m.size(); ++r) {
        if (is_zero(m[r][col])) continue;
        const double mag = magnitude(m[r][col]);
        if (best == m.size() || mag > best_mag) {
            best = r;
            best_mag = mag;
        }
    }
    return best;
}

}  // namespace detail

/// Row echelon reduction in place; returns the pivot columns.
/// Exact for Rational; for double, an entry must be exactly zero to be skipped.
template <class S>
std::vector<std::size_t> row_reduce(DenseRows<S>& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        const std::size_t p = detail::choose_pivot(m, row, col);
        if (p == m.size()) continue;
        std::swap(m[row], m[p]);
        const S inv = S(1) / m[row][col];
        for (std::size_t c = col; c < cols; ++c)
            if (!is_zero(m[row][c])) m[row][c] *= inv;
        for (std::size_t r = row + 1; r < m.size(); ++r) {
            if (is_zero(m[r][col])) continue;
            const S f = m[r][col];
            for (std::size_t c = col; c < cols; ++c)
                if (!is_zero(m[row][c])) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Exact rank of a rational matrix.
inline int exact_rank(DenseRows<Rational> m) { return static_cast<int>(row_reduce(m).size()); }

template <class S>
S determinant(DenseRows<S> m) {
    const std::size_t n = m.size();
    S det(1);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t p = detail::choose_pivot(m, col, col);
        if (p == n) return S(0);
        if (p != col) {
            std::swap(m[p], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (is_zero(m[r][col])) continue;
            const S f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

/// Inverse by Gauss-Jordan elimination; throws NumericalError if singular.
template <class S>
DenseRows<S> inverse(DenseRows<S> m) {
    const std::size_t n = m.size();
    DenseRows<S> inv = zero_rows<S>(n, n);
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = S(1);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t p = detail::choose_pivot(m, col, col);
        if (p == n) throw NumericalError("inverse: singular matrix");
        std::swap(m[p], m[col]);
        std::swap(inv[p], inv[col]);
        const S d = S(1) / m[col][col];
        for (std::size_t c = 0; c < n; ++c) {
            m[col][c] *= d;
            inv[col][c] *= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || is_zero(m[r][col])) continue;
            const S f = m[r][col];
            for (std::size_t c = 0; c < n; ++c) {
                m[r][c] -= f * m[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

}  // namespace alfeld
