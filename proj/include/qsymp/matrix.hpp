#pragma once

#include "qsymp/scalar.hpp"

#include <initializer_list>
#include <optional>
#include <vector>

namespace qsymp {

/// Small dense matrix over a commutative ring R. Everything is exact; sizes
/// stay at desk scale so no effort is spent on asymptotics.
template <class R>
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows * cols), R(0)) {
        if (rows < 0 || cols < 0) throw math_error("Matrix: negative dimension");
    }
    Matrix(std::initializer_list<std::initializer_list<R>> init) {
        rows_ = static_cast<int>(init.size());
        cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
        for (const auto& row : init) {
            if (static_cast<int>(row.size()) != cols_) throw math_error("Matrix: ragged initializer");
            for (const auto& x : row) e_.push_back(x);
        }
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int k = 0; k < n; ++k) m(k, k) = R(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    R& operator()(int r, int c) { return e_[static_cast<size_t>(r * cols_ + c)]; }
    const R& operator()(int r, int c) const { return e_[static_cast<size_t>(r * cols_ + c)]; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_square() const { return rows_ == cols_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix operator-() const {
        Matrix m = *this;
        for (auto& x : m.e_) x = -x;
        return m;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        a.check_same_shape(b);
        for (size_t k = 0; k < a.e_.size(); ++k) a.e_[k] += b.e_[k];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        a.check_same_shape(b);
        for (size_t k = 0; k < a.e_.size(); ++k) a.e_[k] -= b.e_[k];
        return a;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw math_error("Matrix: shape mismatch in product");
        Matrix m(a.rows_, b.cols_);
        for (int r = 0; r < a.rows_; ++r)
            for (int k = 0; k < a.cols_; ++k) {
                const R& ark = a(r, k);
                if (ark.is_zero()) continue;
                for (int c = 0; c < b.cols_; ++c) m(r, c) += ark * b(k, c);
            }
        return m;
    }
    friend Matrix operator*(const R& s, Matrix m) {
        for (auto& x : m.e_) x = s * x;
        return m;
    }
    Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
    Matrix& operator-=(const Matrix& o) { return *this = *this - o; }

    Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
        return m;
    }

    R trace() const {
        if (!is_square()) throw math_error("Matrix: trace of non-square matrix");
        R t(0);
        for (int k = 0; k < rows_; ++k) t += (*this)(k, k);
        return t;
    }

    Matrix pow(int k) const {
        if (!is_square()) throw math_error("Matrix: power of non-square matrix");
        Matrix acc = identity(rows_);
        for (int j = 0; j < k; ++j) acc = acc * *this;
        return acc;
    }

    template <class S>
    Matrix<S> map() const {
        Matrix<S> m(rows_, cols_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m(r, c) = S((*this)(r, c));
        return m;
    }

  private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw math_error("Matrix: shape mismatch");
    }
    int rows_ = 0;
    int cols_ = 0;
    std::vector<R> e_;
};

using Mat = Matrix<Scalar>;

/// Determinant over the field Q(i) by fraction-full Gaussian elimination.
inline Scalar det(Mat m) {
    if (!m.is_square()) throw math_error("det: non-square matrix");
    int n = m.rows();
    Scalar d(1);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (!m(r, c).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return Scalar(0);
        if (pivot != c) {
            for (int k = 0; k < n; ++k) std::swap(m(pivot, k), m(c, k));
            d = -d;
        }
        d *= m(c, c);
        Scalar inv = m(c, c).inverse();
        for (int r = c + 1; r < n; ++r) {
            if (m(r, c).is_zero()) continue;
            Scalar f = m(r, c) * inv;
            for (int k = c; k < n; ++k) m(r, k) -= f * m(c, k);
        }
    }
    return d;
}

/// Inverse over Q(i); throws on singular input.
inline Mat inverse(Mat m) {
    if (!m.is_square()) throw math_error("inverse: non-square matrix");
    int n = m.rows();
    Mat inv = Mat::identity(n);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (!m(r, c).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw math_error("inverse: singular matrix");
        if (pivot != c)
            for (int k = 0; k < n; ++k) {
                std::swap(m(pivot, k), m(c, k));
                std::swap(inv(pivot, k), inv(c, k));
            }
        Scalar pinv = m(c, c).inverse();
        for (int k = 0; k < n; ++k) {
            m(c, k) *= pinv;
            inv(c, k) *= pinv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || m(r, c).is_zero()) continue;
            Scalar f = m(r, c);
            for (int k = 0; k < n; ++k) {
                m(r, k) -= f * m(c, k);
                inv(r, k) -= f * inv(c, k);
            }
        }
    }
    return inv;
}

/// Solve A x = b; returns nullopt when A is singular (A square).
inline std::optional<Mat> solve(Mat a, Mat b) {
    if (!a.is_square() || a.rows() != b.rows()) throw math_error("solve: shape mismatch");
    int n = a.rows();
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (!a(r, c).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        if (pivot != c) {
            for (int k = 0; k < n; ++k) std::swap(a(pivot, k), a(c, k));
            for (int k = 0; k < b.cols(); ++k) std::swap(b(pivot, k), b(c, k));
        }
        Scalar pinv = a(c, c).inverse();
        for (int k = 0; k < n; ++k) a(c, k) *= pinv;
        for (int k = 0; k < b.cols(); ++k) b(c, k) *= pinv;
        for (int r = 0; r < n; ++r) {
            if (r == c || a(r, c).is_zero()) continue;
            Scalar f = a(r, c);
            for (int k = 0; k < n; ++k) a(r, k) -= f * a(c, k);
            for (int k = 0; k < b.cols(); ++k) b(r, k) -= f * b(c, k);
        }
    }
    return b;
}

/// Basis of the kernel of m (columns of the returned matrix).
inline Mat kernel_basis(Mat m) {
    int rows = m.rows(), cols = m.cols();
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (!m(r, c).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int k = 0; k < cols; ++k) std::swap(m(pivot, k), m(rank, k));
        Scalar pinv = m(rank, c).inverse();
        for (int k = 0; k < cols; ++k) m(rank, k) *= pinv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m(r, c).is_zero()) continue;
            Scalar f = m(r, c);
            for (int k = 0; k < cols; ++k) m(r, k) -= f * m(rank, k);
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<int> free_cols;
    for (int c = 0, p = 0; c < cols; ++c) {
        if (p < rank && pivot_col[static_cast<size_t>(p)] == c)
            ++p;
        else
            free_cols.push_back(c);
    }
    Mat basis(cols, static_cast<int>(free_cols.size()));
    for (size_t j = 0; j < free_cols.size(); ++j) {
        basis(free_cols[j], static_cast<int>(j)) = Scalar(1);
        for (int p = 0; p < rank; ++p) basis(pivot_col[static_cast<size_t>(p)], static_cast<int>(j)) = -m(p, free_cols[j]);
    }
    return basis;
}

}  // namespace qsymp
