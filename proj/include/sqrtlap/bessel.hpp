#pragma once

#include "sqrtlap/types.hpp"

namespace sqrtlap {

/// Bessel function J_m(x) of integer order m >= 0, x >= 0.
/// Ascending power series for small arguments, Miller's normalized
/// downward recurrence otherwise.
Real bessel_j(int order, Real x);

/// First derivative J_m'(x).
Real bessel_j_prime(int order, Real x);

/// k-th positive zero of J_m, absolute accuracy ~1e-13.
/// Supported range: 0 <= m <= 32, 1 <= k <= 64.
Real bessel_j_zero(int order, int index);

}  // namespace sqrtlap
