// SPDX-License-Identifier: Apache-2.0
//
// Seeded random streams. Every stochastic routine in the library draws from
// a SeededRng so a fixed root seed reproduces a run bit-for-bit. Parallel
// call sites derive independent child streams from (seed, label) instead of
// sharing one generator.

#pragma once

#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "loract/matrix.hpp"

namespace loract {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace detail

// xoshiro256** seeded through splitmix64. Child streams are a pure function
// of (seed, label); they do not depend on how far the parent has advanced.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t x = seed;
        for (auto& s : state_) s = detail::splitmix64(x);
    }

    std::uint64_t seed() const { return seed_; }

    SeededRng child(std::string_view label) const {
        std::uint64_t x = seed_ ^ detail::fnv1a64(label);
        return SeededRng(detail::splitmix64(x));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0,1), 53-bit resolution
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // unbiased uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        require(n > 0, "next_below: n must be positive");
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // standard normal via Box-Muller, spare value cached
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - next_double();  // (0,1], keeps log finite
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
    std::uint64_t seed_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

template <class T>
Matrix<T> gaussian_matrix(SeededRng& rng, index_t m, index_t n) {
    require(m >= 1 && n >= 1, "gaussian_matrix: dimensions must be >= 1");
    Matrix<T> a(m, n);
    for (auto& v : a.data) v = static_cast<T>(rng.next_gaussian());
    return a;
}

template <class T>
struct RowSample {
    Matrix<T> rows;                   // l x n, in draw order
    std::vector<index_t> indices;     // source row of each sampled row
};

// Uniform sampling of l distinct rows (partial Fisher-Yates).
template <class T>
RowSample<T> sample_rows(SeededRng& rng, const Matrix<T>& a, index_t l) {
    require(a.rows >= 1 && a.cols >= 1, "sample_rows: empty matrix");
    require(l >= 1 && l <= a.rows, "sample_rows: need 1 <= l <= rows");
    std::vector<index_t> pool(static_cast<size_t>(a.rows));
    for (index_t i = 0; i < a.rows; ++i) pool[static_cast<size_t>(i)] = i;

    RowSample<T> out;
    out.rows = Matrix<T>(l, a.cols);
    out.indices.resize(static_cast<size_t>(l));
    for (index_t i = 0; i < l; ++i) {
        const index_t j = i + static_cast<index_t>(rng.next_below(static_cast<std::uint64_t>(a.rows - i)));
        std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
        const index_t src = pool[static_cast<size_t>(i)];
        out.indices[static_cast<size_t>(i)] = src;
        for (index_t c = 0; c < a.cols; ++c) out.rows(i, c) = a(src, c);
    }
    return out;
}

}  // namespace loract
