#pragma once

#include <vector>

#include "sqrtlap/types.hpp"

namespace sqrtlap {

/// Planar/boxed domains with exact Dirichlet eigenpairs: axis-aligned
/// rectangles (0,L1)x...x(0,Ln) for n = 2,3 and the disk of radius r
/// centered at the origin (n = 2).
struct DomainSpec {
  enum class Kind { Rectangle, Disk };

  Kind kind = Kind::Rectangle;
  std::vector<Real> sides;  // rectangle side lengths, size n
  Real radius = 0;          // disk radius

  static DomainSpec rectangle(std::vector<Real> side_lengths);
  static DomainSpec disk(Real r);

  int dimension() const;
  Real measure() const;

  /// Membership in the closure of the domain.
  bool contains(const Point& x, Real tol = 0) const;

  Point centroid() const;
  Real distance_to_boundary(const Point& x) const;

  /// Fractional critical trace exponent 2n/(n-1).
  Real critical_exponent() const { return 2.0 * dimension() / (dimension() - 1.0); }

  /// Axis-aligned bounding box, rows = (min, max) per coordinate.
  void bounding_box(Point& lo, Point& hi) const;
};

}  // namespace sqrtlap
