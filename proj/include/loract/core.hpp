// SPDX-License-Identifier: Apache-2.0
//
// Shared basics: error types, index type, numeric helpers.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace loract {

inline constexpr const char* kVersion = "0.1.0";

using index_t = std::int64_t;

// Precondition violated by the caller (bad shapes, out-of-range arguments).
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input is outside the mathematical domain of the operation.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative kernel failed to converge; message carries the residual.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual(residual) {}
    double residual;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ContractError(msg);
}

// Compensated accumulator; keeps reductions independent of chunking order.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace loract
