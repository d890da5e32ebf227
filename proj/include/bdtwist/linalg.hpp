/**
 * @file linalg.hpp
 * @brief Small dense matrices over an exact ring or field and Gauss-Jordan
 * elimination (rank, pivots, solve, inverse, nullspace).
 */
#pragma once

#include <cassert>
#include <optional>
#include <string>
#include <vector>

#include "bdtwist/scalar.hpp"

namespace bdtwist {

namespace detail {
inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const Laurent& x) { return x.is_zero(); }
inline bool is_zero(const Fraction& x) { return x.is_zero(); }
}  // namespace detail

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!detail::is_zero(x)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        for (size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        for (size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        assert(a.cols_ == b.rows_);
        Matrix r(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(i, k);
                if (detail::is_zero(x)) continue;
                for (size_t j = 0; j < b.cols_; ++j) {
                    const T& y = b(k, j);
                    if (detail::is_zero(y)) continue;
                    r(i, j) += x * y;
                }
            }
        return r;
    }
    friend Matrix operator*(const T& s, Matrix a) {
        for (auto& x : a.data_) x = s * x;
        return a;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    /// Kronecker product.
    friend Matrix kron(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t j = 0; j < a.cols_; ++j) {
                const T& x = a(i, j);
                if (detail::is_zero(x)) continue;
                for (size_t k = 0; k < b.rows_; ++k)
                    for (size_t l = 0; l < b.cols_; ++l) {
                        const T& y = b(k, l);
                        if (detail::is_zero(y)) continue;
                        r(i * b.rows_ + k, j * b.cols_ + l) = x * y;
                    }
            }
        return r;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T> diagonal(const std::vector<T>& d) {
    Matrix<T> m(d.size(), d.size());
    for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

template <class T, class U, class F>
Matrix<U> map_entries(const Matrix<T>& m, F f) {
    Matrix<U> r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = f(m(i, j));
    return r;
}

/// Result of Gauss-Jordan elimination: reduced row echelon form plus the
/// pivot columns and the original row that produced each pivot.
template <class T>
struct Echelon {
    Matrix<T> rref;
    std::vector<size_t> pivot_cols;
    std::vector<size_t> pivot_rows;  // rows of the input, in pivot order
    size_t rank() const { return pivot_cols.size(); }
};

/// Gauss-Jordan elimination over a field.  Pivot rows are recorded so that
/// callers can pick an independent subset of the input rows.
template <class T>
Echelon<T> row_reduce(Matrix<T> m) {
    Echelon<T> e;
    std::vector<size_t> origin(m.rows());
    for (size_t i = 0; i < origin.size(); ++i) origin[i] = i;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t piv = row;
        while (piv < m.rows() && detail::is_zero(m(piv, col))) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row) {
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
            std::swap(origin[piv], origin[row]);
        }
        T inv = T(1) / m(row, col);
        for (size_t j = col; j < m.cols(); ++j)
            if (!detail::is_zero(m(row, j))) m(row, j) = m(row, j) * inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || detail::is_zero(m(i, col))) continue;
            T f = m(i, col);
            for (size_t j = col; j < m.cols(); ++j)
                if (!detail::is_zero(m(row, j))) m(i, j) -= f * m(row, j);
        }
        e.pivot_cols.push_back(col);
        e.pivot_rows.push_back(origin[row]);
        ++row;
    }
    e.rref = std::move(m);
    return e;
}

template <class T>
size_t rank(const Matrix<T>& m) {
    return row_reduce(m).rank();
}

/// Solve A x = b; nullopt if inconsistent.  Free variables are set to zero.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
    assert(b.size() == a.rows());
    Matrix<T> aug(a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto e = row_reduce(aug);
    std::vector<T> x(a.cols(), T(0));
    for (size_t k = 0; k < e.rank(); ++k) {
        if (e.pivot_cols[k] == a.cols()) return std::nullopt;
        x[e.pivot_cols[k]] = e.rref(k, a.cols());
    }
    return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
    assert(a.rows() == a.cols());
    size_t n = a.rows();
    Matrix<T> aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = T(1);
    }
    auto e = row_reduce(aug);
    if (e.rank() < n || e.pivot_cols[n - 1] != n - 1) return std::nullopt;
    Matrix<T> inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
    return inv;
}

/// Basis of { x : A x = 0 }.
template <class T>
std::vector<std::vector<T>> nullspace(const Matrix<T>& a) {
    auto e = row_reduce(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(a.cols(), T(0));
        v[f] = T(1);
        for (size_t k = 0; k < e.rank(); ++k) v[e.pivot_cols[k]] = -e.rref(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
T determinant(Matrix<T> m) {
    assert(m.rows() == m.cols());
    T det(1);
    size_t n = m.rows();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && detail::is_zero(m(piv, c))) ++piv;
        if (piv == n) return T(0);
        if (piv != c) {
            for (size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            det = -det;
        }
        det = det * m(c, c);
        T inv = T(1) / m(c, c);
        for (size_t i = c + 1; i < n; ++i) {
            if (detail::is_zero(m(i, c))) continue;
            T f = m(i, c) * inv;
            for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

using RationalMatrix = Matrix<Rational>;
using ScalarMatrix = Matrix<Laurent>;
using FractionMatrix = Matrix<Fraction>;

inline FractionMatrix to_fraction(const ScalarMatrix& m) {
    return map_entries<Laurent, Fraction>(m, [](const Laurent& x) { return Fraction(x); });
}

/// Converts back to Laurent entries; throws NotLaurent otherwise.
inline ScalarMatrix to_laurent(const FractionMatrix& m) {
    return map_entries<Fraction, Laurent>(m, [](const Fraction& x) { return x.laurent(); });
}

}  // namespace bdtwist
