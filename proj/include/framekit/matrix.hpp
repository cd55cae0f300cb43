#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "framekit/errors.hpp"
#include "framekit/scalar.hpp"

namespace framekit {

/// Dense column-major matrix over a real or complex scalar.  Carrier of all
/// operators in the library (analysis/synthesis maps, frame and fusion
/// operators, projections).  Entries admitted through the data constructor
/// must be finite; factories and internal arithmetic preserve that.
template <typename Scalar>
class Matrix {
public:
    using Traits = ScalarTraits<Scalar>;
    using Real = typename Traits::Real;

    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Scalar{}) {}

    /// Column-major data constructor; rejects non-finite entries.
    Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw DimensionMismatch("matrix data length " + std::to_string(data_.size()) +
                                    " != " + std::to_string(rows_) + "x" + std::to_string(cols_));
        for (const Scalar& v : data_)
            if (!is_finite_scalar(v)) throw NonFinite("non-finite matrix entry");
    }

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Traits::from_real(1.0);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    std::span<const Scalar> col(std::size_t j) const {
        return {data_.data() + j * rows_, rows_};
    }
    std::span<Scalar> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }

    std::vector<Scalar> col_vector(std::size_t j) const {
        auto c = col(j);
        return {c.begin(), c.end()};
    }

    void set_col(std::size_t j, std::span<const Scalar> v) {
        std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(j * rows_));
    }

    /// Columns selected by `indices`, in the given order.
    Matrix select_cols(std::span<const std::size_t> indices) const {
        Matrix out(rows_, indices.size());
        for (std::size_t k = 0; k < indices.size(); ++k) out.set_col(k, col(indices[k]));
        return out;
    }

    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (std::size_t j = 0; j < cols_; ++j)
            for (std::size_t i = 0; i < rows_; ++i) out(j, i) = Traits::conj((*this)(i, j));
        return out;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix out(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] + o.data_[k];
        return out;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix out(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] - o.data_[k];
        return out;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_)
            throw DimensionMismatch("matrix product shape mismatch: " + shape_string() + " * " +
                                    o.shape_string());
        Matrix out(rows_, o.cols_);
        for (std::size_t j = 0; j < o.cols_; ++j) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const Scalar f = o(k, j);
                if (f == Scalar{}) continue;
                const Scalar* a = data_.data() + k * rows_;
                Scalar* c = out.data_.data() + j * rows_;
                for (std::size_t i = 0; i < rows_; ++i) c[i] += a[i] * f;
            }
        }
        return out;
    }

    Matrix scaled(Scalar f) const {
        Matrix out = *this;
        for (Scalar& v : out.data_) v *= f;
        return out;
    }

    std::vector<Scalar> apply(std::span<const Scalar> x) const {
        if (x.size() != cols_)
            throw DimensionMismatch("matrix-vector shape mismatch: " + shape_string() +
                                    " applied to length " + std::to_string(x.size()));
        std::vector<Scalar> y(rows_, Scalar{});
        for (std::size_t j = 0; j < cols_; ++j) {
            const Scalar f = x[j];
            if (f == Scalar{}) continue;
            const Scalar* a = data_.data() + j * rows_;
            for (std::size_t i = 0; i < rows_; ++i) y[i] += a[i] * f;
        }
        return y;
    }

    Real frobenius_norm() const {
        Real s = 0;
        for (const Scalar& v : data_) {
            const Real a = Traits::abs(v);
            s += a * a;
        }
        return std::sqrt(s);
    }

    Real max_abs() const {
        Real m = 0;
        for (const Scalar& v : data_) m = std::max(m, Traits::abs(v));
        return m;
    }

    bool is_finite() const {
        for (const Scalar& v : data_)
            if (!is_finite_scalar(v)) return false;
        return true;
    }

    std::string shape_string() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    const std::vector<Scalar>& data() const { return data_; }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch("shape mismatch: " + shape_string() + " vs " + o.shape_string());
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

// -- vector helpers -----------------------------------------------------------

/// <x, y>, linear in x, conjugate-linear in y.
template <typename Scalar>
Scalar dot(std::span<const Scalar> x, std::span<const Scalar> y) {
    if (x.size() != y.size()) throw DimensionMismatch("dot length mismatch");
    Scalar s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * ScalarTraits<Scalar>::conj(y[i]);
    return s;
}

template <typename Scalar>
RealOf<Scalar> norm(std::span<const Scalar> x) {
    RealOf<Scalar> s = 0;
    for (const Scalar& v : x) {
        const auto a = ScalarTraits<Scalar>::abs(v);
        s += a * a;
    }
    return std::sqrt(s);
}

template <typename Scalar>
std::vector<Scalar> axpy(Scalar a, std::span<const Scalar> x, std::span<const Scalar> y) {
    if (x.size() != y.size()) throw DimensionMismatch("axpy length mismatch");
    std::vector<Scalar> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + y[i];
    return out;
}

template <typename Scalar>
void scale_in_place(std::span<Scalar> x, Scalar f) {
    for (Scalar& v : x) v *= f;
}

template <typename Scalar>
RealOf<Scalar> distance(std::span<const Scalar> x, std::span<const Scalar> y) {
    if (x.size() != y.size()) throw DimensionMismatch("distance length mismatch");
    RealOf<Scalar> s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto a = ScalarTraits<Scalar>::abs(x[i] - y[i]);
        s += a * a;
    }
    return std::sqrt(s);
}

} // namespace framekit
