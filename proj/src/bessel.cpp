#include "sqrtlap/bessel.hpp"

#include <cmath>
#include <vector>

#include "sqrtlap/error.hpp"

namespace sqrtlap {

namespace {

// Ascending series sum_{s} (-1)^s (x/2)^{m+2s} / (s! (m+s)!).
// Stable in double precision for x up to ~20; we only call it below x = 14.
Real series_j(int m, Real x) {
  const Real half = 0.5 * x;
  Real term = 1.0;
  for (int s = 1; s <= m; ++s) term *= half / s;  // (x/2)^m / m!
  Real sum = term;
  const Real x2 = -half * half;
  for (int s = 1; s < 200; ++s) {
    term *= x2 / (static_cast<Real>(s) * (m + s));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

// Miller's algorithm: downward recurrence from a start order well above
// max(m, x), normalized with J_0 + 2*sum_k J_{2k} = 1. Returns J_m(x).
Real miller_j(int m, Real x) {
  const int top = static_cast<int>(std::max<Real>(m, x)) + 16 +
                  static_cast<int>(2.0 * std::sqrt(std::max<Real>(m, x)));
  const int start = top + (top % 2);  // even start keeps the sum bookkeeping simple
  Real jp = 0.0;                      // J_{n+1}
  Real jc = 1e-30;                    // J_n (arbitrary seed)
  Real sum = 0.0;
  Real result = 0.0;
  for (int n = start; n > 0; --n) {
    Real jm = (2.0 * n / x) * jc - jp;  // J_{n-1}
    jp = jc;
    jc = jm;
    if (n - 1 == m) result = jc;
    if ((n - 1) % 2 == 0) sum += (n - 1 == 0) ? jc : 2.0 * jc;
    if (std::abs(jc) > 1e250) {  // rescale to avoid overflow
      jp *= 1e-250;
      jc *= 1e-250;
      sum *= 1e-250;
      result *= 1e-250;
    }
  }
  return result / sum;
}

}  // namespace

Real bessel_j(int order, Real x) {
  if (order < 0 || x < 0)
    throw Error(ErrorCode::RANGE, "bessel_j requires order >= 0 and x >= 0");
  if (x == 0) return order == 0 ? 1.0 : 0.0;
  if (x <= 14.0 && order <= 40) return series_j(order, x);
  return miller_j(order, x);
}

Real bessel_j_prime(int order, Real x) {
  if (order == 0) return -bessel_j(1, x);
  return 0.5 * (bessel_j(order - 1, x) - bessel_j(order + 1, x));
}

Real bessel_j_zero(int order, int index) {
  if (order < 0 || order > 32 || index < 1 || index > 64)
    throw Error(ErrorCode::RANGE, "bessel_j_zero supports 0 <= m <= 32, 1 <= k <= 64");

  // All positive zeros exceed the order, and consecutive zeros of any J_m
  // are separated by more than 3, so a half-unit scan cannot skip one.
  const Real step = 0.5;
  Real a = std::max<Real>(0.25, order);
  Real fa = bessel_j(order, a);
  int found = 0;
  for (int guard = 0; guard < 20000; ++guard) {
    Real b = a + step;
    Real fb = bessel_j(order, b);
    if ((fa < 0) != (fb < 0)) {
      ++found;
      if (found == index) {
        // bisect, then one Newton step to sharpen the midpoint
        Real lo = a, hi = b, flo = fa;
        for (int it = 0; it < 80; ++it) {
          Real mid = 0.5 * (lo + hi);
          Real fm = bessel_j(order, mid);
          if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
          if (hi - lo < 1e-14 * hi) break;
        }
        Real z = 0.5 * (lo + hi);
        Real dz = bessel_j(order, z) / bessel_j_prime(order, z);
        if (std::isfinite(dz) && std::abs(dz) < step) z -= dz;
        return z;
      }
    }
    a = b;
    fa = fb;
  }
  throw Error(ErrorCode::INTERNAL_INCONSISTENCY, "bessel zero scan did not terminate");
}

}  // namespace sqrtlap
