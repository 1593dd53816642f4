#include "sqrtlap/quadrature.hpp"

#include <cmath>

#include "sqrtlap/error.hpp"

namespace sqrtlap {

void gauss_legendre(int n, Vector& nodes, Vector& weights) {
  if (n < 1) throw Error(ErrorCode::RANGE, "quadrature order must be >= 1");
  nodes.resize(n);
  weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    Real x = std::cos(pi() * (i + 0.75) / (n + 0.5));
    Real pp = 0;
    for (int it = 0; it < 100; ++it) {
      Real p0 = 1, p1 = 0;
      for (int j = 0; j < n; ++j) {
        Real p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
      }
      pp = n * (x * p0 - p1) / (x * x - 1);
      Real dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    Real w = 2.0 / ((1 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

void gauss_legendre(int n, Real a, Real b, Vector& nodes, Vector& weights) {
  gauss_legendre(n, nodes, weights);
  const Real mid = 0.5 * (a + b), hw = 0.5 * (b - a);
  nodes = (mid + hw * nodes.array()).matrix();
  weights *= hw;
}

QuadratureGrid build_quadrature(const DomainSpec& domain, int order, int max_angular_mode) {
  QuadratureGrid grid;
  grid.order = order;
  const int n = domain.dimension();

  if (domain.kind == DomainSpec::Kind::Rectangle) {
    std::vector<Vector> xs(n), ws(n);
    for (int d = 0; d < n; ++d) gauss_legendre(order, 0.0, domain.sides[d], xs[d], ws[d]);
    Index q = 1;
    for (int d = 0; d < n; ++d) q *= order;
    grid.points.resize(q, n);
    grid.weights.resize(q);
    for (Index i = 0; i < q; ++i) {
      Index rest = i;
      Real w = 1;
      for (int d = n - 1; d >= 0; --d) {
        const Index id = rest % order;
        rest /= order;
        grid.points(i, d) = xs[d][id];
        w *= ws[d][id];
      }
      grid.weights[i] = w;
    }
    return grid;
  }

  // Disk: radial Gauss-Legendre (with the Jacobian r folded into the weight)
  // times uniform angles.
  Vector r, wr;
  gauss_legendre(order, 0.0, domain.radius, r, wr);
  const int nang = std::max(order, 2 * max_angular_mode + 2);
  const Real wang = 2.0 * pi() / nang;
  grid.points.resize(static_cast<Index>(order) * nang, 2);
  grid.weights.resize(static_cast<Index>(order) * nang);
  Index q = 0;
  for (int i = 0; i < order; ++i) {
    for (int t = 0; t < nang; ++t, ++q) {
      const Real theta = wang * t;
      grid.points(q, 0) = r[i] * std::cos(theta);
      grid.points(q, 1) = r[i] * std::sin(theta);
      grid.weights[q] = wr[i] * r[i] * wang;
    }
  }
  return grid;
}

Real adaptive_simpson(const std::function<Real(Real)>& f, Real a, Real b, Real tol,
                      int max_depth) {
  struct Rec {
    static Real go(const std::function<Real(Real)>& f, Real a, Real m, Real b, Real fa, Real fm,
                   Real fb, Real whole, Real tol, int depth) {
      const Real lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const Real flm = f(lm), frm = f(rm);
      const Real left = (m - a) / 6 * (fa + 4 * flm + fm);
      const Real right = (b - m) / 6 * (fm + 4 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15;
      return go(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             go(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  };
  const Real m = 0.5 * (a + b);
  const Real fa = f(a), fm = f(m), fb = f(b);
  const Real whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return Rec::go(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace sqrtlap
