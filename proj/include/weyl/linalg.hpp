#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "weyl/error.hpp"
#include "weyl/numberfield.hpp"
#include "weyl/rational.hpp"

namespace weyl {

template <class T>
using Mat = std::vector<std::vector<T>>;

inline bool lin_is_zero(const Rational& q) { return q == 0; }
inline bool lin_is_zero(const FieldElement& a) { return a.is_zero(); }
inline Rational lin_inv(const Rational& q) { return Rational(1) / q; }
inline FieldElement lin_inv(const FieldElement& a) { return a.inverse(); }

template <class T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
    const std::size_t m = a.size();
    const std::size_t n = b.empty() ? 0 : b[0].size();
    const std::size_t k = b.size();
    Mat<T> r;
    r.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<T> row;
        row.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            T acc = a[i][0] * b[0][j];
            for (std::size_t t = 1; t < k; ++t) acc = acc + a[i][t] * b[t][j];
            row.push_back(std::move(acc));
        }
        r.push_back(std::move(row));
    }
    return r;
}

template <class T>
std::size_t mat_rank(Mat<T> m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && lin_is_zero(m[piv][col])) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        T inv = lin_inv(m[rank][col]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (lin_is_zero(m[i][col])) continue;
            T f = m[i][col] * inv;
            for (std::size_t j = col; j < cols; ++j) m[i][j] = m[i][j] - f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Solves A X = B exactly; A must have full column rank, otherwise nullopt.
// nullopt likewise when the system is inconsistent.
template <class T>
std::optional<Mat<T>> mat_solve(Mat<T> a, Mat<T> b, const T& zero) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    const std::size_t k = b.empty() ? 0 : b[0].size();
    std::size_t row = 0;
    std::vector<std::size_t> pivot_rows;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = row;
        while (piv < m && lin_is_zero(a[piv][col])) ++piv;
        if (piv == m) return std::nullopt; // column rank deficient
        std::swap(a[row], a[piv]);
        std::swap(b[row], b[piv]);
        T inv = lin_inv(a[row][col]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || lin_is_zero(a[i][col])) continue;
            T f = a[i][col] * inv;
            for (std::size_t j = col; j < n; ++j) a[i][j] = a[i][j] - f * a[row][j];
            for (std::size_t j = 0; j < k; ++j) b[i][j] = b[i][j] - f * b[row][j];
        }
        pivot_rows.push_back(row);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (!lin_is_zero(b[i][j])) return std::nullopt; // inconsistent
    Mat<T> x(n, std::vector<T>(k, zero));
    for (std::size_t c = 0; c < n; ++c) {
        T inv = lin_inv(a[pivot_rows[c]][c]);
        for (std::size_t j = 0; j < k; ++j) x[c][j] = b[pivot_rows[c]][j] * inv;
    }
    return x;
}

template <class T>
std::optional<Mat<T>> mat_inverse(const Mat<T>& a, const T& zero, const T& one) {
    const std::size_t n = a.size();
    Mat<T> id(n, std::vector<T>(n, zero));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = one;
    return mat_solve(a, id, zero);
}

template <class T>
Mat<T> mat_identity(std::size_t n, const T& zero, const T& one) {
    Mat<T> id(n, std::vector<T>(n, zero));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = one;
    return id;
}

template <class T>
T mat_det(Mat<T> m, const T& zero, const T& one) {
    const std::size_t n = m.size();
    T det = one;
    bool neg = false;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && lin_is_zero(m[piv][col])) ++piv;
        if (piv == n) return zero;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            neg = !neg;
        }
        det = det * m[col][col];
        T inv = lin_inv(m[col][col]);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (lin_is_zero(m[i][col])) continue;
            T f = m[i][col] * inv;
            for (std::size_t j = col; j < n; ++j) m[i][j] = m[i][j] - f * m[col][j];
        }
    }
    if (neg) det = zero - det;
    return det;
}

// ---------------------------------------------------------------------------
// Integer lattice machinery (rows generate the lattice).

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

struct HnfResult {
    IntMat basis;     // Hermite normal form rows of the row lattice
    IntMat transform; // unimodular U with U*input = [basis; 0]
};

// Row HNF via Euclidean elimination: pivots positive, entries above each
// pivot reduced into [0, pivot), zero rows dropped.
inline HnfResult hnf_rows(IntMat m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    IntMat u(rows, IntVec(rows, 0));
    for (std::size_t i = 0; i < rows; ++i) u[i][i] = 1;

    auto row_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < cols; ++j) m[dst][j] -= q * m[src][j];
        for (std::size_t j = 0; j < rows; ++j) u[dst][j] -= q * u[src][j];
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap(m[a], m[b]);
        std::swap(u[a], u[b]);
    };
    auto row_negate = [&](std::size_t r) {
        for (auto& v : m[r]) v = -v;
        for (auto& v : u[r]) v = -v;
    };

    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = rank; i < rows; ++i) {
                if (m[i][col] == 0) continue;
                if (best == rows || cmp(abs(m[i][col]), abs(m[best][col])) < 0) best = i;
            }
            if (best == rows) break;
            row_swap(rank, best);
            bool clean = true;
            for (std::size_t i = rank + 1; i < rows; ++i) {
                if (m[i][col] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[rank][col].get_mpz_t());
                row_axpy(i, rank, q);
                if (m[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rank < rows && m[rank][col] != 0) {
            if (m[rank][col] < 0) row_negate(rank);
            for (std::size_t i = 0; i < rank; ++i) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[rank][col].get_mpz_t());
                row_axpy(i, rank, q);
            }
            ++rank;
        }
    }
    HnfResult res;
    res.basis.assign(m.begin(), m.begin() + rank);
    res.transform = std::move(u);
    return res;
}

// Basis of the left integer kernel {x : x*M = 0}; the kernel of an integer
// (or rational) matrix is saturated by construction. Rational input is fine
// because scaling columns does not change the kernel.
inline IntMat left_kernel(const Mat<Rational>& m) {
    const std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    std::vector<Rational> flat;
    flat.reserve(rows * cols);
    for (const auto& r : m)
        for (const auto& q : r) flat.push_back(q);
    Int den = common_denominator(flat);
    IntMat im(rows, IntVec(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            Rational s = m[i][j] * Rational(den);
            im[i][j] = s.get_num();
        }
    HnfResult h = hnf_rows(std::move(im));
    IntMat ker(h.transform.begin() + h.basis.size(), h.transform.end());
    return hnf_rows(std::move(ker)).basis; // canonical kernel basis
}

// Unique rational solution x of x*B = v for Q-independent rows B, if any.
inline std::optional<std::vector<Rational>> solve_left_rational(const Mat<Rational>& basis,
                                                                const std::vector<Rational>& v) {
    const std::size_t m = basis.size();
    const std::size_t n = basis.empty() ? v.size() : basis[0].size();
    // Transpose: solve A x = v with A = B^T (n x m).
    Mat<Rational> a(n, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a[j][i] = basis[i][j];
    Mat<Rational> rhs(n, std::vector<Rational>(1));
    for (std::size_t j = 0; j < n; ++j) rhs[j][0] = v[j];
    auto x = mat_solve(a, rhs, Rational(0));
    if (!x) return std::nullopt;
    std::vector<Rational> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = (*x)[i][0];
    return out;
}

// As above but demanding integrality of the solution.
inline std::optional<IntVec> solve_left_integer(const Mat<Rational>& basis,
                                                const std::vector<Rational>& v) {
    auto x = solve_left_rational(basis, v);
    if (!x) return std::nullopt;
    IntVec out;
    out.reserve(x->size());
    for (const auto& q : *x) {
        if (!is_integer(q)) return std::nullopt;
        out.push_back(q.get_num());
    }
    return out;
}

inline Rational int_det(const IntMat& m) {
    Mat<Rational> q(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& v : m[i]) q[i].emplace_back(v);
    return mat_det(std::move(q), Rational(0), Rational(1));
}

} // namespace weyl
