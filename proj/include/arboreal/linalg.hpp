#pragma once

// Small dense matrices and the handful of factorizations the library needs.
// Sizes here are tiny (k <= 8 symbols, <= ~100 transfer-impedance rows), so
// everything is row-major std::vector storage with no blocking.

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "arboreal/error.hpp"

namespace arboreal {

using Complex = std::complex<double>;

template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    DenseMatrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw ValidationError("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    const std::vector<T>& data() const noexcept { return data_; }

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Matrix = DenseMatrix<double>;
using CMatrix = DenseMatrix<Complex>;

template <class T>
DenseMatrix<T> operator*(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.cols() != b.rows()) throw ValidationError("matrix product: shape mismatch");
    DenseMatrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const T ail = a(i, l);
            if (ail == T{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
        }
    return c;
}

inline CMatrix adjoint(const CMatrix& a) {
    CMatrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

inline Matrix transpose(const Matrix& a) {
    Matrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

template <class T>
double max_abs_diff(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, static_cast<double>(std::abs(a.data()[i] - b.data()[i])));
    return m;
}

// LU factorization with partial pivoting, stored in place (unit lower L).
template <class T>
class LuFactor {
public:
    explicit LuFactor(DenseMatrix<T> a) : lu_(std::move(a)), perm_(lu_.rows()) {
        if (!lu_.square()) throw ValidationError("LU: matrix must be square");
        const std::size_t n = lu_.rows();
        for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            double best = std::abs(lu_(c, c));
            for (std::size_t r = c + 1; r < n; ++r) {
                if (std::abs(lu_(r, c)) > best) {
                    best = std::abs(lu_(r, c));
                    p = r;
                }
            }
            if (p != c) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu_(p, j), lu_(c, j));
                std::swap(perm_[p], perm_[c]);
                sign_ = -sign_;
            }
            if (best == 0.0) {
                singular_ = true;
                continue;
            }
            const T pivot = lu_(c, c);
            for (std::size_t r = c + 1; r < n; ++r) {
                const T f = lu_(r, c) / pivot;
                lu_(r, c) = f;
                if (f == T{}) continue;
                for (std::size_t j = c + 1; j < n; ++j) lu_(r, j) -= f * lu_(c, j);
            }
        }
    }

    bool singular() const noexcept { return singular_; }

    T determinant() const {
        T det = T(sign_);
        for (std::size_t i = 0; i < lu_.rows(); ++i) det *= lu_(i, i);
        return det;
    }

    std::vector<T> solve(std::span<const T> b) const {
        if (singular_) throw ValidationError("LU solve: singular matrix");
        const std::size_t n = lu_.rows();
        std::vector<T> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            T s = b[perm_[i]];
            for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
            x[i] = s;
        }
        for (std::size_t i = n; i-- > 0;) {
            T s = x[i];
            for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
            x[i] = s / lu_(i, i);
        }
        return x;
    }

private:
    DenseMatrix<T> lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
    bool singular_ = false;
};

template <class T>
T determinant(const DenseMatrix<T>& a) {
    if (a.rows() == 0) return T{1};
    return LuFactor<T>(a).determinant();
}

// Cholesky factor of a symmetric positive definite matrix; throws if a pivot
// is not positive.
class Cholesky {
public:
    explicit Cholesky(const Matrix& a);
    std::vector<double> solve(std::span<const double> b) const;
    double log_determinant() const;
    std::size_t size() const noexcept { return l_.rows(); }

private:
    Matrix l_;
};

}  // namespace arboreal
