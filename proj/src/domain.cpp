#include "sqrtlap/domain.hpp"

#include <algorithm>
#include <cmath>

#include "sqrtlap/error.hpp"

namespace sqrtlap {

DomainSpec DomainSpec::rectangle(std::vector<Real> side_lengths) {
  const int n = static_cast<int>(side_lengths.size());
  if (n < 2 || n > 3)
    throw Error(ErrorCode::UNSUPPORTED_DOMAIN, "rectangle supports n = 2 or 3");
  for (Real L : side_lengths)
    if (!(L > 0)) throw Error(ErrorCode::UNSUPPORTED_DOMAIN, "side lengths must be positive");
  DomainSpec d;
  d.kind = Kind::Rectangle;
  d.sides = std::move(side_lengths);
  return d;
}

DomainSpec DomainSpec::disk(Real r) {
  if (!(r > 0)) throw Error(ErrorCode::UNSUPPORTED_DOMAIN, "disk radius must be positive");
  DomainSpec d;
  d.kind = Kind::Disk;
  d.radius = r;
  return d;
}

int DomainSpec::dimension() const {
  return kind == Kind::Rectangle ? static_cast<int>(sides.size()) : 2;
}

Real DomainSpec::measure() const {
  if (kind == Kind::Rectangle) {
    Real m = 1;
    for (Real L : sides) m *= L;
    return m;
  }
  return pi() * radius * radius;
}

bool DomainSpec::contains(const Point& x, Real tol) const {
  if (x.size() != dimension()) return false;
  if (kind == Kind::Rectangle) {
    for (int d = 0; d < dimension(); ++d)
      if (x[d] < -tol || x[d] > sides[d] + tol) return false;
    return true;
  }
  return x.norm() <= radius + tol;
}

Point DomainSpec::centroid() const {
  Point c(dimension());
  if (kind == Kind::Rectangle) {
    for (int d = 0; d < dimension(); ++d) c[d] = 0.5 * sides[d];
  } else {
    c.setZero();
  }
  return c;
}

Real DomainSpec::distance_to_boundary(const Point& x) const {
  if (kind == Kind::Rectangle) {
    Real dist = std::numeric_limits<Real>::max();
    for (int d = 0; d < dimension(); ++d)
      dist = std::min({dist, x[d], sides[d] - x[d]});
    return dist;
  }
  return radius - x.norm();
}

void DomainSpec::bounding_box(Point& lo, Point& hi) const {
  const int n = dimension();
  lo.resize(n);
  hi.resize(n);
  if (kind == Kind::Rectangle) {
    for (int d = 0; d < n; ++d) {
      lo[d] = 0;
      hi[d] = sides[d];
    }
  } else {
    lo.setConstant(-radius);
    hi.setConstant(radius);
  }
}

}  // namespace sqrtlap
