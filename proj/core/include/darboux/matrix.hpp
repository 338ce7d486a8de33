#pragma once

#include "darboux/error.hpp"
#include "darboux/numbers.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace darboux {

// Dense row-major matrix over an exact ring.  T needs +, -, *, a
// constructor from long, and a vanishes() overload; division is only used by the
// elimination routines.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), T(0)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

    bool is_zero() const {
        for (const auto& v : data_) {
            if (!vanishes(v)) return false;
        }
        return true;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        }
        return t;
    }

    template <class F>
    auto map(F f) const -> Matrix<decltype(f(std::declval<T>()))> {
        Matrix<decltype(f(std::declval<T>()))> out(rows_, cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
        }
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same(a, b);
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = c.data_[i] + b.data_[i];
        return c;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same(a, b);
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = c.data_[i] - b.data_[i];
        return c;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
        Matrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int k = 0; k < a.cols_; ++k) {
                const T& x = a(i, k);
                if (vanishes(x)) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    if (!vanishes(b(k, j))) c(i, j) = c(i, j) + x * b(k, j);
                }
            }
        }
        return c;
    }
    Matrix scaled(const T& s) const {
        Matrix c = *this;
        for (auto& v : c.data_) v = v * s;
        return c;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.data_.size(); ++i) {
            if (!vanishes(T(a.data_[i] - b.data_[i]))) return false;
        }
        return true;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape");
        std::vector<T> out(static_cast<std::size_t>(rows_), T(0));
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) out[i] = out[i] + (*this)(i, j) * v[j];
        }
        return out;
    }

private:
    static void check_same(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix shapes differ");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

template <class T>
T trace(const Matrix<T>& m) {
    T t(0);
    for (int i = 0; i < m.rows(); ++i) t = t + m(i, i);
    return t;
}

template <class T>
Matrix<T> matrix_power(const Matrix<T>& m, int k) {
    Matrix<T> r = Matrix<T>::identity(m.rows());
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

// Gaussian elimination with exact nonzero pivots.
template <class T>
T determinant(Matrix<T> m) {
    if (!m.square()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
    int n = m.rows();
    T det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r) {
            if (!vanishes(m(r, col))) {
                piv = r;
                break;
            }
        }
        if (piv < 0) return T(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            det = T(0) - det;
        }
        det = det * m(col, col);
        for (int r = col + 1; r < n; ++r) {
            if (vanishes(m(r, col))) continue;
            T f = m(r, col) / m(col, col);
            for (int j = col; j < n; ++j) m(r, j) = m(r, j) - f * m(col, j);
        }
    }
    return det;
}

// Inverse by Gauss-Jordan; nullopt when singular.
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
    if (!a.square()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
    int n = a.rows();
    Matrix<T> m = a;
    Matrix<T> inv = Matrix<T>::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r) {
            if (!vanishes(m(r, col))) {
                piv = r;
                break;
            }
        }
        if (piv < 0) return std::nullopt;
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        T p = m(col, col);
        for (int j = 0; j < n; ++j) {
            m(col, j) = m(col, j) / p;
            inv(col, j) = inv(col, j) / p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || vanishes(m(r, col))) continue;
            T f = m(r, col);
            for (int j = 0; j < n; ++j) {
                m(r, j) = m(r, j) - f * m(col, j);
                inv(r, j) = inv(r, j) - f * inv(col, j);
            }
        }
    }
    return inv;
}

// Solves A x = rhs for possibly non-square A.  Free variables are set to zero;
// nullopt when the system is inconsistent.  If unique is non-null it receives
// whether the solution is unique.
template <class T>
std::optional<std::vector<T>> solve_linear(const Matrix<T>& a, const std::vector<T>& rhs, bool* unique = nullptr) {
    int rows = a.rows();
    int cols = a.cols();
    if (static_cast<int>(rhs.size()) != rows) throw Error(ErrorKind::DimensionMismatch, "right-hand side length");
    Matrix<T> m(rows, cols + 1);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = a(i, j);
        m(i, cols) = rhs[i];
    }
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i) {
            if (!vanishes(m(i, c))) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j <= cols; ++j) std::swap(m(piv, j), m(r, j));
        }
        T p = m(r, c);
        for (int j = c; j <= cols; ++j) m(r, j) = m(r, j) / p;
        for (int i = 0; i < rows; ++i) {
            if (i == r || vanishes(m(i, c))) continue;
            T f = m(i, c);
            for (int j = c; j <= cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < rows; ++i) {
        if (!vanishes(m(i, cols))) return std::nullopt;
    }
    if (unique != nullptr) *unique = static_cast<int>(pivot_col.size()) == cols;
    std::vector<T> x(static_cast<std::size_t>(cols), T(0));
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = m(i, cols);
    return x;
}

} // namespace darboux
