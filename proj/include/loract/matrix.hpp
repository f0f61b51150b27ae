// SPDX-License-Identifier: Apache-2.0
//
// Dense row-major matrix type and elementary arithmetic. This is the
// universal carrier for activations, weights and factors throughout the
// library; everything else is built on top of it.

#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include "loract/core.hpp"

namespace loract {

template <class T>
struct Matrix {
    static_assert(std::is_floating_point_v<T>);
    using value_type = T;

    index_t rows = 0;
    index_t cols = 0;
    std::vector<T> data;  // row-major, data.size() == rows*cols

    Matrix() = default;
    Matrix(index_t r, index_t c) : rows(r), cols(c), data(static_cast<size_t>(r * c), T(0)) {
        require(r >= 0 && c >= 0, "matrix: negative dimension");
    }
    Matrix(index_t r, index_t c, std::vector<T> values) : rows(r), cols(c), data(std::move(values)) {
        require(static_cast<index_t>(data.size()) == r * c, "matrix: data length != rows*cols");
    }

    static Matrix zeros(index_t r, index_t c) { return Matrix(r, c); }

    static Matrix identity(index_t n) {
        Matrix m(n, n);
        for (index_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<T>> lst) {
        Matrix m(static_cast<index_t>(lst.size()),
                 lst.size() ? static_cast<index_t>(lst.begin()->size()) : 0);
        index_t i = 0;
        for (const auto& row : lst) {
            require(static_cast<index_t>(row.size()) == m.cols, "from_rows: ragged rows");
            index_t j = 0;
            for (T v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    T& operator()(index_t i, index_t j) { return data[static_cast<size_t>(i * cols + j)]; }
    T operator()(index_t i, index_t j) const { return data[static_cast<size_t>(i * cols + j)]; }

    T* row_ptr(index_t i) { return data.data() + i * cols; }
    const T* row_ptr(index_t i) const { return data.data() + i * cols; }

    index_t size() const { return rows * cols; }
    bool empty() const { return rows == 0 || cols == 0; }

    Matrix transposed() const {
        Matrix t(cols, rows);
        for (index_t i = 0; i < rows; ++i)
            for (index_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_finite() const {
        for (T v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        return rows == o.rows && cols == o.cols && data == o.data;
    }

    template <class U>
    Matrix<U> cast() const {
        Matrix<U> out(rows, cols);
        for (size_t i = 0; i < data.size(); ++i) out.data[i] = static_cast<U>(data[i]);
        return out;
    }
};

using MatrixD = Matrix<double>;
using MatrixF = Matrix<float>;

namespace detail {
inline std::string shape_str(index_t r, index_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}
}  // namespace detail

// C = op(A)·op(B), cache-friendly ikj order on the row-major layout.
template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b, bool trans_a = false, bool trans_b = false) {
    if (trans_a || trans_b) {
        const Matrix<T> at = trans_a ? a.transposed() : a;
        const Matrix<T> bt = trans_b ? b.transposed() : b;
        return matmul(at, bt);
    }
    require(a.cols == b.rows, "matmul: inner dimensions disagree (" + detail::shape_str(a.rows, a.cols) +
                                  " vs " + detail::shape_str(b.rows, b.cols) + ")");
    Matrix<T> c(a.rows, b.cols);
    for (index_t i = 0; i < a.rows; ++i) {
        T* ci = c.row_ptr(i);
        const T* ai = a.row_ptr(i);
        for (index_t t = 0; t < a.cols; ++t) {
            const T aik = ai[t];
            if (aik == T(0)) continue;
            const T* bt = b.row_ptr(t);
            for (index_t j = 0; j < b.cols; ++j) ci[j] += aik * bt[j];
        }
    }
    return c;
}

template <class T>
void check_same_shape(const Matrix<T>& a, const Matrix<T>& b, const char* op) {
    require(a.rows == b.rows && a.cols == b.cols,
            std::string(op) + ": shape mismatch (" + detail::shape_str(a.rows, a.cols) + " vs " +
                detail::shape_str(b.rows, b.cols) + ")");
}

template <class T>
Matrix<T> add(const Matrix<T>& a, const Matrix<T>& b) {
    check_same_shape(a, b, "add");
    Matrix<T> c = a;
    for (size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
    return c;
}

template <class T>
Matrix<T> sub(const Matrix<T>& a, const Matrix<T>& b) {
    check_same_shape(a, b, "sub");
    Matrix<T> c = a;
    for (size_t i = 0; i < c.data.size(); ++i) c.data[i] -= b.data[i];
    return c;
}

template <class T>
Matrix<T> scale(const Matrix<T>& a, T s) {
    Matrix<T> c = a;
    for (T& v : c.data) v *= s;
    return c;
}

template <class T>
Matrix<T> hadamard(const Matrix<T>& a, const Matrix<T>& b) {
    check_same_shape(a, b, "hadamard");
    Matrix<T> c = a;
    for (size_t i = 0; i < c.data.size(); ++i) c.data[i] *= b.data[i];
    return c;
}

template <class T>
void add_in_place(Matrix<T>& a, const Matrix<T>& b) {
    check_same_shape(a, b, "add_in_place");
    for (size_t i = 0; i < a.data.size(); ++i) a.data[i] += b.data[i];
}

template <class T>
double frobenius_norm(const Matrix<T>& a) {
    double s = 0.0;
    for (T v : a.data) s += static_cast<double>(v) * static_cast<double>(v);
    return std::sqrt(s);
}

template <class T>
double max_abs(const Matrix<T>& a) {
    double m = 0.0;
    for (T v : a.data) m = std::max(m, std::abs(static_cast<double>(v)));
    return m;
}

// max |a-b| over all entries; shapes must agree.
template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
    check_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::abs(static_cast<double>(a.data[i]) - static_cast<double>(b.data[i])));
    return m;
}

template <class T>
Matrix<T> columns(const Matrix<T>& a, index_t first, index_t count) {
    require(first >= 0 && count >= 0 && first + count <= a.cols, "columns: range out of bounds");
    Matrix<T> out(a.rows, count);
    for (index_t i = 0; i < a.rows; ++i)
        for (index_t j = 0; j < count; ++j) out(i, j) = a(i, first + j);
    return out;
}

}  // namespace loract
