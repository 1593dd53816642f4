#pragma once

// Test-side oracles, deliberately independent of the library paths they
// check: plain series Bessel evaluation with bisection zeros, a sparse
// finite-difference eigensolver for the rectangle spectrum, and a simple
// composite Simpson integrator.

#include <functional>
#include <vector>

#include "sqrtlap/types.hpp"

namespace oracle {

using sqrtlap::Real;

/// Ascending power series for J_m(x); reliable for x <= 12 in doubles.
Real bessel_series(int m, Real x);

/// k-th positive zero of J_m via sign scan plus bisection on the series.
/// Valid while the zero stays below ~12 (small m and k).
Real bessel_zero_bisect(int m, int k);

/// Smallest `count` Dirichlet eigenvalues of -Delta on (0,L1)x(0,L2) from a
/// 5-point finite-difference discretization with `grid` cells per side,
/// computed by subspace inverse iteration on the sparse matrix.
std::vector<Real> fd_rectangle_eigenvalues(Real L1, Real L2, int grid, int count);

/// Richardson extrapolation of the h and h/2 finite-difference spectra.
std::vector<Real> fd_rectangle_eigenvalues_extrapolated(Real L1, Real L2, int grid, int count);

/// Composite Simpson with n (even) panels.
Real simpson(const std::function<Real(Real)>& f, Real a, Real b, int n);

/// Gamma(1 + n/2) in closed form for integer n >= 0.
Real gamma_one_plus_half(int n);

}  // namespace oracle
