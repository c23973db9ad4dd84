#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qva {

// Thrown on violated preconditions (division by zero, bad iota direction, ...).
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a computation would need coefficients outside the authoritative
// window of one of its inputs.
struct window_too_small : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exponent sentinel for unbounded window/support edges.  Kept well away from
// INT_MIN/INT_MAX so that sums of two bounds never overflow.
inline constexpr int kNegInf = -(1 << 28);
inline constexpr int kPosInf = (1 << 28);

inline int add_bound(int a, int b) {
    if (a <= kNegInf || b <= kNegInf) return kNegInf;
    if (a >= kPosInf || b >= kPosInf) return kPosInf;
    return a + b;
}

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }
inline long long lcm_ll(long long a, long long b) { return std::lcm(a, b); }

} // namespace qva
