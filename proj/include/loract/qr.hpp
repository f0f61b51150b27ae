// SPDX-License-Identifier: Apache-2.0
//
// Thin Householder QR. When the input under-spans (sampled rows can be
// linearly dependent), the columns of Q belonging to numerically zero
// diagonal entries of R are rebuilt from seeded random vectors so callers
// always receive a full orthonormal basis of the requested width.

#pragma once

#include <cmath>
#include <vector>

#include "loract/matrix.hpp"
#include "loract/rng.hpp"

namespace loract {

template <class T>
struct QrResult {
    Matrix<T> q;  // m x k, orthonormal columns
    Matrix<T> r;  // k x k, upper triangular
};

namespace detail {

// Replace the given columns of q with random directions orthogonal to every
// other column (two Gram-Schmidt passes). Deterministic: the stream depends
// only on the fixed seed and the draw sequence.
template <class T>
void complete_orthonormal_columns(Matrix<T>& q, const std::vector<index_t>& fill, SeededRng rng) {
    const index_t m = q.rows;
    for (index_t col : fill)
        for (index_t i = 0; i < m; ++i) q(i, col) = T(0);

    for (index_t col : fill) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<T> v(static_cast<size_t>(m));
            for (auto& x : v) x = static_cast<T>(rng.next_gaussian());
            for (int pass = 0; pass < 2; ++pass) {
                for (index_t j = 0; j < q.cols; ++j) {
                    if (j == col) continue;
                    T dot = T(0);
                    for (index_t i = 0; i < m; ++i) dot += q(i, j) * v[static_cast<size_t>(i)];
                    for (index_t i = 0; i < m; ++i) v[static_cast<size_t>(i)] -= dot * q(i, j);
                }
            }
            double norm2 = 0.0;
            for (T x : v) norm2 += static_cast<double>(x) * static_cast<double>(x);
            const double norm = std::sqrt(norm2);
            if (norm > 1e-8) {
                for (index_t i = 0; i < m; ++i) q(i, col) = v[static_cast<size_t>(i)] / static_cast<T>(norm);
                break;
            }
        }
    }
}

inline constexpr std::uint64_t kBasisCompletionSeed = 0x6C6F726163743131ull;

}  // namespace detail

template <class T>
QrResult<T> householder_qr(const Matrix<T>& a) {
    const index_t m = a.rows;
    const index_t k = a.cols;
    require(m >= 1 && k >= 1, "householder_qr: empty matrix");
    require(m >= k, "householder_qr: need rows >= cols");

    Matrix<T> w = a;                                  // working copy, reduced in place
    std::vector<std::vector<T>> reflectors;           // unit Householder vectors, length m-j
    reflectors.reserve(static_cast<size_t>(k));

    for (index_t j = 0; j < k; ++j) {
        double norm2 = 0.0;
        for (index_t i = j; i < m; ++i) norm2 += static_cast<double>(w(i, j)) * static_cast<double>(w(i, j));
        const double norm = std::sqrt(norm2);

        std::vector<T> v(static_cast<size_t>(m - j), T(0));
        if (norm > 0.0) {
            const double x0 = static_cast<double>(w(j, j));
            const double alpha = x0 >= 0.0 ? -norm : norm;
            for (index_t i = j; i < m; ++i) v[static_cast<size_t>(i - j)] = w(i, j);
            v[0] -= static_cast<T>(alpha);
            double vnorm2 = 0.0;
            for (T x : v) vnorm2 += static_cast<double>(x) * static_cast<double>(x);
            const double vnorm = std::sqrt(vnorm2);
            if (vnorm > 0.0) {
                for (T& x : v) x = static_cast<T>(static_cast<double>(x) / vnorm);
                // apply H = I - 2 v v^T to the trailing block
                for (index_t c = j; c < k; ++c) {
                    double dot = 0.0;
                    for (index_t i = j; i < m; ++i)
                        dot += static_cast<double>(v[static_cast<size_t>(i - j)]) * static_cast<double>(w(i, c));
                    for (index_t i = j; i < m; ++i)
                        w(i, c) -= static_cast<T>(2.0 * dot) * v[static_cast<size_t>(i - j)];
                }
            } else {
                std::fill(v.begin(), v.end(), T(0));  // column already reduced
            }
        }
        reflectors.push_back(std::move(v));
    }

    QrResult<T> out;
    out.r = Matrix<T>(k, k);
    for (index_t i = 0; i < k; ++i)
        for (index_t j = i; j < k; ++j) out.r(i, j) = w(i, j);

    // Q = H_0 ... H_{k-1} applied to the thin identity
    out.q = Matrix<T>(m, k);
    for (index_t j = 0; j < k; ++j) out.q(j, j) = T(1);
    for (index_t j = k; j-- > 0;) {
        const auto& v = reflectors[static_cast<size_t>(j)];
        bool zero = true;
        for (T x : v)
            if (x != T(0)) { zero = false; break; }
        if (zero) continue;
        for (index_t c = 0; c < k; ++c) {
            double dot = 0.0;
            for (index_t i = j; i < m; ++i)
                dot += static_cast<double>(v[static_cast<size_t>(i - j)]) * static_cast<double>(out.q(i, c));
            if (dot == 0.0) continue;
            for (index_t i = j; i < m; ++i)
                out.q(i, c) -= static_cast<T>(2.0 * dot) * v[static_cast<size_t>(i - j)];
        }
    }

    // Rank-deficient input: rebuild the columns whose R diagonal vanished.
    const double fnorm = frobenius_norm(a);
    std::vector<index_t> deficient;
    for (index_t j = 0; j < k; ++j)
        if (std::abs(static_cast<double>(out.r(j, j))) <= 1e-12 * fnorm) deficient.push_back(j);
    if (!deficient.empty())
        detail::complete_orthonormal_columns(out.q, deficient, SeededRng(detail::kBasisCompletionSeed));

    return out;
}

}  // namespace loract
