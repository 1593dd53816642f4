#pragma once

#include <functional>

#include "sqrtlap/domain.hpp"
#include "sqrtlap/types.hpp"

namespace sqrtlap {

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton
/// iteration on the Legendre recurrence (accurate to ~1 ulp).
void gauss_legendre(int n, Vector& nodes, Vector& weights);

/// Gauss-Legendre rule mapped to [a, b].
void gauss_legendre(int n, Real a, Real b, Vector& nodes, Vector& weights);

/// Volume quadrature over a domain. Rectangle: tensor Gauss-Legendre with
/// `order` points per axis. Disk: Gauss-Legendre in radius times a uniform
/// (periodic trapezoid) rule in angle; the angular count is raised to at
/// least 2*max_angular_mode + 2 so products of basis modes integrate exactly.
struct QuadratureGrid {
  PointMatrix points;  // Q x n
  Vector weights;      // Q
  int order = 0;

  Index size() const { return weights.size(); }
};

QuadratureGrid build_quadrature(const DomainSpec& domain, int order, int max_angular_mode = 0);

/// Adaptive Simpson integration on [a, b] to absolute tolerance tol.
Real adaptive_simpson(const std::function<Real(Real)>& f, Real a, Real b, Real tol,
                      int max_depth = 50);

}  // namespace sqrtlap
