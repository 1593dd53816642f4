#pragma once

#include <functional>

#include "sqrtlap/function_space.hpp"

namespace sqrtlap {

/// Elementary y-profile of a product-form cylinder function p(y) v(x).
/// Exponential profiles have closed-form energy integrals; generic
/// profiles fall back to 1-D quadrature on [0, y_cut].
struct YProfile {
  enum class Kind { Exponential, Generic };

  Kind kind = Kind::Exponential;
  Real rate = 0.5;  // p(y) = exp(-rate * y)
  std::function<Real(Real)> p;
  std::function<Real(Real)> dp;
  Real y_cut = 60.0;

  static YProfile exponential(Real rate);
  static YProfile generic(std::function<Real(Real)> p, std::function<Real(Real)> dp,
                          Real y_cut = 60.0);

  Real value_at_zero() const;
  Real slope_at_zero() const;
  Real int_p_squared() const;   // int_0^inf p(y)^2 dy
  Real int_dp_squared() const;  // int_0^inf p'(y)^2 dy
};

/// Trace-space factor of a product cylinder function, with exact x-integrals.
struct TraceFactor {
  std::function<Real(const Point&)> eval;
  Real grad_l2_squared = 0;  // int |grad v|^2 dx
  Real l2_squared = 0;       // int v^2 dx
};

/// A function on the half-cylinder C_Omega. Harmonic fields decay per mode
/// as exp(-sqrt(lambda_j) y); product fields are p(y) v(x).
struct CylinderField {
  enum class Tag { Harmonic, Product };

  Tag tag = Tag::Harmonic;
  BasisPtr basis;
  Vector amplitudes;  // harmonic: per-mode b_j
  YProfile profile;   // product only
  TraceFactor factor;  // product only

  static CylinderField harmonic(BasisPtr basis, Vector amplitudes);
  static CylinderField product(BasisPtr basis, YProfile profile, TraceFactor factor);

  /// Pointwise value at (x, y), y >= 0.
  Real eval(const Point& x, Real y) const;
};

/// Harmonic extension: b_j = a_j with per-mode exponential decay.
/// Tr(extend(u)) = u exactly.
CylinderField extend(const SpectralField& u);

/// Squared cylinder norm int |grad w|^2 dx dy, exact for harmonic fields and
/// exponential-profile products.
Real cylinder_energy(const CylinderField& w);

/// Restriction to y = 0 as a spectral field (product factors are projected).
SpectralField trace(const CylinderField& w, int quad_order = 64);

/// Discrete Dirichlet-to-Neumann datum -d/dy w(x, 0) as a spectral field.
SpectralField neumann_trace(const CylinderField& w, int quad_order = 64);

/// Default cylinder window for sampled output: tails below exp(-6).
Real default_cylinder_window(const Basis& basis);

}  // namespace sqrtlap
