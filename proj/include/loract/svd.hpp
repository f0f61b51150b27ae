// SPDX-License-Identifier: Apache-2.0
//
// Full SVD via one-sided Jacobi, preconditioned by a thin QR so the
// rotation phase always runs on a square matrix of the small dimension.
// Jacobi is slow for huge inputs but at the sizes handled here it is simple
// and has high relative accuracy, including for tiny singular values.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "loract/qr.hpp"

namespace loract {

template <class T>
struct SvdResult {
    Matrix<T> u;             // m x p, orthonormal columns
    std::vector<T> sigma;    // length p, nonincreasing, nonnegative
    Matrix<T> v;             // n x p, orthonormal columns
};

namespace detail {

inline constexpr int kJacobiMaxSweeps = 30;
inline constexpr double kJacobiTol = 1e-12;

// One-sided Jacobi on a square n x n matrix held column-major in `w`.
// Rotates column pairs until every normalized Gram off-diagonal falls below
// kJacobiTol; accumulates the right rotations into `v` (also column-major).
template <class T>
void jacobi_sweeps(std::vector<T>& w, std::vector<T>& v, index_t n) {
    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        double max_off = 0.0;
        for (index_t p = 0; p < n - 1; ++p) {
            T* wp = w.data() + p * n;
            T* vp = v.data() + p * n;
            for (index_t q = p + 1; q < n; ++q) {
                T* wq = w.data() + q * n;
                T* vq = v.data() + q * n;

                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (index_t i = 0; i < n; ++i) {
                    const double x = static_cast<double>(wp[i]);
                    const double y = static_cast<double>(wq[i]);
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if (alpha == 0.0 || beta == 0.0) continue;
                const double off = std::abs(gamma) / std::sqrt(alpha * beta);
                max_off = std::max(max_off, off);
                if (off <= kJacobiTol) continue;

                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const T cc = static_cast<T>(c);
                const T ss = static_cast<T>(s);
                for (index_t i = 0; i < n; ++i) {
                    const T x = wp[i], y = wq[i];
                    wp[i] = cc * x - ss * y;
                    wq[i] = ss * x + cc * y;
                }
                for (index_t i = 0; i < n; ++i) {
                    const T x = vp[i], y = vq[i];
                    vp[i] = cc * x - ss * y;
                    vq[i] = ss * x + cc * y;
                }
            }
        }
        if (max_off <= kJacobiTol) return;
        if (sweep == kJacobiMaxSweeps - 1)
            throw ConvergenceError(
                "svd: one-sided Jacobi did not converge in " + std::to_string(kJacobiMaxSweeps) +
                    " sweeps, residual " + std::to_string(max_off),
                max_off);
    }
}

}  // namespace detail

template <class T>
SvdResult<T> svd(const Matrix<T>& a) {
    require(a.rows >= 1 && a.cols >= 1, "svd: empty matrix");
    if (a.rows < a.cols) {
        SvdResult<T> t = svd(a.transposed());
        return SvdResult<T>{std::move(t.v), std::move(t.sigma), std::move(t.u)};
    }

    const index_t m = a.rows;
    const index_t n = a.cols;

    // A = Q0 R, then factor the n x n block.
    QrResult<T> pre = householder_qr(a);

    std::vector<T> w(static_cast<size_t>(n * n));  // column-major copy of R
    std::vector<T> v(static_cast<size_t>(n * n), T(0));
    for (index_t j = 0; j < n; ++j) {
        v[static_cast<size_t>(j * n + j)] = T(1);
        for (index_t i = 0; i < n; ++i) w[static_cast<size_t>(j * n + i)] = pre.r(i, j);
    }
    detail::jacobi_sweeps(w, v, n);

    // Column norms are the singular values; normalized columns give U of R.
    std::vector<T> sig(static_cast<size_t>(n));
    for (index_t j = 0; j < n; ++j) {
        double s2 = 0.0;
        for (index_t i = 0; i < n; ++i) {
            const double x = static_cast<double>(w[static_cast<size_t>(j * n + i)]);
            s2 += x * x;
        }
        sig[static_cast<size_t>(j)] = static_cast<T>(std::sqrt(s2));
    }

    std::vector<index_t> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), index_t(0));
    std::stable_sort(order.begin(), order.end(), [&](index_t x, index_t y) {
        return sig[static_cast<size_t>(x)] > sig[static_cast<size_t>(y)];
    });

    SvdResult<T> out;
    out.sigma.resize(static_cast<size_t>(n));
    Matrix<T> ur(n, n);
    out.v = Matrix<T>(n, n);
    std::vector<index_t> zero_cols;
    for (index_t j = 0; j < n; ++j) {
        const index_t src = order[static_cast<size_t>(j)];
        const T s = sig[static_cast<size_t>(src)];
        out.sigma[static_cast<size_t>(j)] = s;
        for (index_t i = 0; i < n; ++i) out.v(i, j) = v[static_cast<size_t>(src * n + i)];
        if (s > T(0)) {
            for (index_t i = 0; i < n; ++i) ur(i, j) = w[static_cast<size_t>(src * n + i)] / s;
        } else {
            zero_cols.push_back(j);
        }
    }
    if (!zero_cols.empty())
        detail::complete_orthonormal_columns(ur, zero_cols, SeededRng(detail::kBasisCompletionSeed));

    out.u = matmul(pre.q, ur);
    return out;
}

template <class T>
double spectral_norm(const Matrix<T>& a) {
    require(a.rows >= 1 && a.cols >= 1, "spectral_norm: empty matrix");
    return static_cast<double>(svd(a).sigma[0]);
}

}  // namespace loract
