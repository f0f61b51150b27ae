// SPDX-License-Identifier: Apache-2.0
//
// Rank-k factorization methods behind one interface:
//   tsvd     - truncated SVD, the optimal rank-k reference
//   rsvd     - Gaussian range finder + QR + small-matrix fold
//   sampled  - the same pipeline with the Gaussian test matrix replaced by a
//              uniformly sampled row submatrix A_l^T (no Gaussian needed)
//   randproj - plain random projection A ~ (1/l) G^T G A, no orthogonality
//
// All four return U (m x k) and V (k x n) with A ~ U V.

#pragma once

#include <string>
#include <vector>

#include "loract/rng.hpp"
#include "loract/svd.hpp"

namespace loract {

enum class DecomposeKind { TruncatedSvd, Rsvd, SampledOrtho, RandomProjection };

inline const char* method_name(DecomposeKind k) {
    switch (k) {
        case DecomposeKind::TruncatedSvd: return "tsvd";
        case DecomposeKind::Rsvd: return "rsvd";
        case DecomposeKind::SampledOrtho: return "sampled";
        case DecomposeKind::RandomProjection: return "randproj";
    }
    return "?";
}

inline DecomposeKind parse_method(const std::string& s) {
    if (s == "tsvd") return DecomposeKind::TruncatedSvd;
    if (s == "rsvd") return DecomposeKind::Rsvd;
    if (s == "sampled") return DecomposeKind::SampledOrtho;
    if (s == "randproj") return DecomposeKind::RandomProjection;
    throw ContractError("unknown decomposition method '" + s + "'");
}

// Method choice plus its knobs. `sketch` is the sketch width / sample count /
// projection dimension depending on the method; 0 means "use the target rank".
struct DecomposeMethod {
    DecomposeKind kind = DecomposeKind::SampledOrtho;
    index_t sketch = 0;
    int power_iters = 1;

    static DecomposeMethod tsvd() { return {DecomposeKind::TruncatedSvd, 0, 0}; }
    static DecomposeMethod rsvd(index_t l = 0, int t = 1) { return {DecomposeKind::Rsvd, l, t}; }
    static DecomposeMethod sampled(index_t l = 0, int t = 1) { return {DecomposeKind::SampledOrtho, l, t}; }
    static DecomposeMethod randproj(index_t l = 0) { return {DecomposeKind::RandomProjection, l, 0}; }
};

template <class T>
struct LowRankFactor {
    Matrix<T> u;  // m x k
    Matrix<T> v;  // k x n
    index_t rank = 0;
    DecomposeKind method = DecomposeKind::TruncatedSvd;
    std::vector<index_t> sample_indices;  // filled by the sampling method only
};

template <class T>
Matrix<T> reconstruct(const LowRankFactor<T>& f) {
    return matmul(f.u, f.v);
}

namespace detail {

// Fold a width-l orthonormal basis down to rank k: SVD the small matrix
// B = Q^T A and keep its top-k part. U stays orthonormal.
template <class T>
LowRankFactor<T> fold_to_rank(const Matrix<T>& a, const Matrix<T>& q, index_t k, DecomposeKind kind) {
    const Matrix<T> b = matmul(q, a, /*trans_a=*/true);  // l x n
    if (q.cols == k) {
        return LowRankFactor<T>{q, b, k, kind, {}};
    }
    SvdResult<T> s = svd(b);
    Matrix<T> ub_k = columns(s.u, 0, k);
    Matrix<T> v(k, a.cols);
    for (index_t i = 0; i < k; ++i)
        for (index_t j = 0; j < a.cols; ++j) v(i, j) = s.sigma[static_cast<size_t>(i)] * s.v(j, i);
    return LowRankFactor<T>{matmul(q, ub_k), std::move(v), k, kind, {}};
}

}  // namespace detail

template <class T>
LowRankFactor<T> truncated_svd(const Matrix<T>& a, index_t k) {
    require(k >= 1 && k <= std::min(a.rows, a.cols), "truncated_svd: k out of range");
    SvdResult<T> s = svd(a);
    Matrix<T> u = columns(s.u, 0, k);
    Matrix<T> v(k, a.cols);
    for (index_t i = 0; i < k; ++i)
        for (index_t j = 0; j < a.cols; ++j) v(i, j) = s.sigma[static_cast<size_t>(i)] * s.v(j, i);
    return LowRankFactor<T>{std::move(u), std::move(v), k, DecomposeKind::TruncatedSvd, {}};
}

template <class T>
LowRankFactor<T> rsvd(const Matrix<T>& a, index_t k, index_t l, int power_iters, SeededRng& rng) {
    require(k >= 1, "rsvd: k must be >= 1");
    require(k <= l && l <= std::min(a.rows, a.cols), "rsvd: need k <= l <= min(m,n)");
    const Matrix<T> omega = gaussian_matrix<T>(rng, a.cols, l);
    Matrix<T> y = matmul(a, omega);
    for (int i = 0; i < power_iters; ++i) {
        Matrix<T> q = householder_qr(y).q;
        y = matmul(a, matmul(a, q, /*trans_a=*/true));
    }
    const Matrix<T> q = householder_qr(y).q;
    return detail::fold_to_rank(a, q, k, DecomposeKind::Rsvd);
}

template <class T>
LowRankFactor<T> sampled_ortho(const Matrix<T>& a, index_t k, index_t l, int power_iters, SeededRng& rng) {
    require(k >= 1 && k <= l, "sampled_ortho: need 1 <= k <= l");
    require(l <= a.rows, "sampled_ortho: need l <= rows");
    RowSample<T> sample = sample_rows(rng, a, l);
    Matrix<T> y = matmul(a, sample.rows, /*trans_a=*/false, /*trans_b=*/true);  // m x l
    for (int i = 0; i < power_iters; ++i) {
        Matrix<T> q = householder_qr(y).q;
        y = matmul(a, matmul(a, q, /*trans_a=*/true));
    }
    const Matrix<T> q = householder_qr(y).q;
    LowRankFactor<T> f = detail::fold_to_rank(a, q, k, DecomposeKind::SampledOrtho);
    f.sample_indices = std::move(sample.indices);
    return f;
}

template <class T>
LowRankFactor<T> random_projection(const Matrix<T>& a, index_t l, SeededRng& rng) {
    require(l >= 1 && l <= a.rows, "random_projection: need 1 <= l <= rows");
    const Matrix<T> g = gaussian_matrix<T>(rng, l, a.rows);
    Matrix<T> u = scale(g.transposed(), static_cast<T>(1.0 / static_cast<double>(l)));
    Matrix<T> v = matmul(g, a);
    return LowRankFactor<T>{std::move(u), std::move(v), l, DecomposeKind::RandomProjection, {}};
}

// Policy-facing dispatch. A zero sketch width defaults to the target rank.
template <class T>
LowRankFactor<T> decompose(const Matrix<T>& a, index_t k, const DecomposeMethod& m, SeededRng& rng) {
    switch (m.kind) {
        case DecomposeKind::TruncatedSvd:
            return truncated_svd(a, k);
        case DecomposeKind::Rsvd: {
            const index_t l = std::min(std::max(m.sketch, k), std::min(a.rows, a.cols));
            return rsvd(a, k, l, m.power_iters, rng);
        }
        case DecomposeKind::SampledOrtho: {
            const index_t l = std::min(std::max(m.sketch, k), a.rows);
            return sampled_ortho(a, k, l, m.power_iters, rng);
        }
        case DecomposeKind::RandomProjection:
            return random_projection(a, std::min(std::max(m.sketch, k), a.rows), rng);
    }
    throw ContractError("decompose: bad method");
}

enum class NormKind { Spectral, Frobenius };

template <class T>
double approx_error(const Matrix<T>& a, const LowRankFactor<T>& f, NormKind norm) {
    const Matrix<T> r = sub(a, reconstruct(f));
    return norm == NormKind::Spectral ? spectral_norm(r) : frobenius_norm(r);
}

}  // namespace loract
