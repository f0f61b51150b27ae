// SPDX-License-Identifier: Apache-2.0
//
// Activation storage policy: decide per matrix whether to keep it exact or
// as a rank-k factor pair, with byte accounting. Storing U (m x k) and
// V (k x n) replaces m*n elements by (m+n)*k, so compression only engages
// when that is a strict saving and the matrix is large enough to matter.

#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "loract/decompose.hpp"

namespace loract {

enum class StoragePrecision : std::uint8_t { F32 = 0, F64 = 1 };

inline index_t bytes_per_element(StoragePrecision p) { return p == StoragePrecision::F32 ? 4 : 8; }

struct CompressionPolicy {
    double ratio = 1.0;              // r = k/n, in (0, 1]
    DecomposeMethod method = DecomposeMethod::sampled();
    index_t min_side = 16;           // below this, storage stays exact
    StoragePrecision precision = StoragePrecision::F32;

    // rank for an m x n activation: k = max(1, round(r*n)), clamped to min(m,n)
    index_t rank_for(index_t m, index_t n) const {
        const index_t k = std::max<index_t>(1, static_cast<index_t>(std::llround(ratio * static_cast<double>(n))));
        return std::min(k, std::min(m, n));
    }

    static CompressionPolicy verification(double r, DecomposeMethod m = DecomposeMethod::sampled()) {
        CompressionPolicy p;
        p.ratio = r;
        p.method = m;
        p.precision = StoragePrecision::F64;
        return p;
    }
};

namespace detail {

// Simulate narrow storage: when the policy stores f32 but the engine runs
// wider, round the retained data through float.
template <class T>
void apply_storage_precision(Matrix<T>& m, StoragePrecision p) {
    if (p == StoragePrecision::F32 && !std::is_same_v<T, float>)
        for (T& v : m.data) v = static_cast<T>(static_cast<float>(v));
}

}  // namespace detail

template <class T>
struct StoredActivation {
    std::variant<Matrix<T>, LowRankFactor<T>> payload;
    index_t rows = 0;
    index_t cols = 0;
    index_t exact_bytes = 0;
    index_t stored_bytes = 0;

    bool is_exact() const { return payload.index() == 0; }
    index_t rank() const { return is_exact() ? 0 : std::get<1>(payload).rank; }
};

template <class T>
StoredActivation<T> store_exact(const Matrix<T>& a, StoragePrecision precision) {
    StoredActivation<T> s;
    s.payload = a;
    s.rows = a.rows;
    s.cols = a.cols;
    s.exact_bytes = a.rows * a.cols * bytes_per_element(precision);
    s.stored_bytes = s.exact_bytes;
    return s;
}

template <class T>
StoredActivation<T> compress_activation(const Matrix<T>& a, const CompressionPolicy& policy, SeededRng& rng) {
    require(!a.empty(), "compress_activation: empty matrix");
    require(policy.ratio > 0.0 && policy.ratio <= 1.0, "compress_activation: ratio must be in (0,1]");
    const index_t m = a.rows, n = a.cols;
    const index_t k = policy.rank_for(m, n);
    if (std::min(m, n) < policy.min_side || (m + n) * k >= m * n) return store_exact(a, policy.precision);

    StoredActivation<T> s;
    LowRankFactor<T> f = decompose(a, k, policy.method, rng);
    detail::apply_storage_precision(f.u, policy.precision);
    detail::apply_storage_precision(f.v, policy.precision);
    s.rows = m;
    s.cols = n;
    s.exact_bytes = m * n * bytes_per_element(policy.precision);
    s.stored_bytes = (m + n) * f.rank * bytes_per_element(policy.precision);
    s.payload = std::move(f);
    return s;
}

template <class T>
Matrix<T> retrieve_activation(const StoredActivation<T>& s) {
    if (s.is_exact()) return std::get<0>(s.payload);
    return reconstruct(std::get<1>(s.payload));
}

template <class T>
std::vector<T> singular_spectrum(const Matrix<T>& a) {
    return svd(a).sigma;
}

// Fraction of directions needed for the running sum of singular values to
// reach `energy_frac` of the total. Energy is the plain sum by default; the
// squared variant is available for sensitivity checks.
template <class T>
double kept_ratio(const std::vector<T>& sigma, double energy_frac, bool squared_energy = false) {
    require(!sigma.empty(), "kept_ratio: empty spectrum");
    require(energy_frac > 0.0 && energy_frac <= 1.0, "kept_ratio: energy_frac must be in (0,1]");
    double total = 0.0;
    for (size_t i = 0; i < sigma.size(); ++i) {
        const double s = static_cast<double>(sigma[i]);
        require(s >= 0.0, "kept_ratio: negative singular value");
        if (i > 0)
            require(static_cast<double>(sigma[i - 1]) >= s, "kept_ratio: spectrum not nonincreasing");
        total += squared_energy ? s * s : s;
    }
    if (total == 0.0) throw DomainError("kept_ratio: all-zero spectrum");
    const double target = energy_frac * total;
    double cum = 0.0;
    for (size_t j = 0; j < sigma.size(); ++j) {
        const double s = static_cast<double>(sigma[j]);
        cum += squared_energy ? s * s : s;
        if (cum >= target) return static_cast<double>(j + 1) / static_cast<double>(sigma.size());
    }
    return 1.0;  // reachable only through rounding; the full spectrum keeps everything
}

// Per-activation byte accounting. Single-writer by design: each training
// step owns one ledger and merges at the end.
class MemoryLedger {
public:
    struct Entry {
        std::string label;
        index_t rows = 0;
        index_t cols = 0;
        index_t rank = 0;  // 0 when stored exact
        index_t exact_bytes = 0;
        index_t stored_bytes = 0;
    };

    template <class T>
    void record(const std::string& label, const StoredActivation<T>& s) {
        entries_.push_back(Entry{label, s.rows, s.cols, s.rank(), s.exact_bytes, s.stored_bytes});
        total_exact_ += s.exact_bytes;
        total_stored_ += s.stored_bytes;
    }

    void record_raw(const std::string& label, index_t rows, index_t cols, index_t rank,
                    index_t exact_bytes, index_t stored_bytes) {
        entries_.push_back(Entry{label, rows, cols, rank, exact_bytes, stored_bytes});
        total_exact_ += exact_bytes;
        total_stored_ += stored_bytes;
    }

    void merge(const MemoryLedger& other) {
        entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
        total_exact_ += other.total_exact_;
        total_stored_ += other.total_stored_;
    }

    const std::vector<Entry>& entries() const { return entries_; }
    index_t total_exact_bytes() const { return total_exact_; }
    index_t total_stored_bytes() const { return total_stored_; }
    double compression_ratio() const {
        return total_exact_ == 0 ? 1.0
                                 : static_cast<double>(total_stored_) / static_cast<double>(total_exact_);
    }

private:
    std::vector<Entry> entries_;
    index_t total_exact_ = 0;
    index_t total_stored_ = 0;
};

}  // namespace loract
