#include "sqrtlap/energy.hpp"

#include <algorithm>
#include <cmath>

#include "sqrtlap/error.hpp"

namespace sqrtlap {

namespace {

Real interp(const std::vector<Real>& xs, const std::vector<Real>& ys, Real t) {
  if (xs.empty() || t < xs.front() || t > xs.back()) return 0;
  auto it = std::upper_bound(xs.begin(), xs.end(), t);
  if (it == xs.begin()) return ys.front();
  if (it == xs.end()) return ys.back();
  const size_t i = static_cast<size_t>(it - xs.begin());
  const Real s = (t - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return (1 - s) * ys[i - 1] + s * ys[i];
}

}  // namespace

Real Nonlinearity::f(Real t) const {
  switch (kind) {
    case Kind::Power:
      return t == 0 ? 0 : scale * std::pow(std::abs(t), q - 2.0) * t;
    case Kind::Bump:
      return t <= 0 ? 0 : std::pow(t, m) * (zeta - t);
    case Kind::TruncatedBump:
      return (t <= 0 || t > zeta) ? 0 : std::pow(t, m) * (zeta - t);
    case Kind::Tabulated:
      return interp(knots, knot_values, t);
  }
  return 0;
}

Real Nonlinearity::f_prime(Real t) const {
  switch (kind) {
    case Kind::Power:
      return t == 0 ? 0 : scale * (q - 1.0) * std::pow(std::abs(t), q - 2.0);
    case Kind::Bump:
      return t <= 0 ? 0 : m * std::pow(t, m - 1.0) * zeta - (m + 1.0) * std::pow(t, m);
    case Kind::TruncatedBump:
      return (t <= 0 || t > zeta) ? 0 : m * std::pow(t, m - 1.0) * zeta - (m + 1.0) * std::pow(t, m);
    case Kind::Tabulated: {
      if (knots.size() < 2 || t < knots.front() || t > knots.back()) return 0;
      auto it = std::upper_bound(knots.begin(), knots.end(), t);
      size_t i = std::min(std::max<size_t>(1, static_cast<size_t>(it - knots.begin())),
                          knots.size() - 1);
      return (knot_values[i] - knot_values[i - 1]) / (knots[i] - knots[i - 1]);
    }
  }
  return 0;
}

Real Nonlinearity::F(Real t) const {
  switch (kind) {
    case Kind::Power:
      return scale * std::pow(std::abs(t), q) / q;
    case Kind::Bump: {
      if (t <= 0) return 0;
      return zeta * std::pow(t, m + 1.0) / (m + 1.0) - std::pow(t, m + 2.0) / (m + 2.0);
    }
    case Kind::TruncatedBump: {
      if (t <= 0) return 0;
      const Real s = std::min(t, zeta);
      return zeta * std::pow(s, m + 1.0) / (m + 1.0) - std::pow(s, m + 2.0) / (m + 2.0);
    }
    case Kind::Tabulated: {
      if (t == 0) return 0;
      const Real lo = std::min<Real>(0, t), hi = std::max<Real>(0, t);
      const Real v = adaptive_simpson([this](Real s) { return f(s); }, lo, hi, 1e-10);
      return t > 0 ? v : -v;
    }
  }
  return 0;
}

Real potential_F(const Nonlinearity& nl, Real t) { return nl.F(t); }

Nonlinearity Nonlinearity::power(Real scale, Real growth) {
  if (!(growth > 1)) throw Error(ErrorCode::GROWTH_RANGE, "power growth must exceed 1");
  Nonlinearity nl;
  nl.kind = Kind::Power;
  nl.scale = scale;
  nl.q = growth;
  nl.a1 = 0;
  nl.a2 = std::abs(scale);
  nl.sign_ok = scale >= 0;
  if (growth < 2 && scale >= 0) {
    nl.has_subquadratic = true;
    nl.b = scale / growth;
    nl.l = growth;
  }
  return nl;
}

Nonlinearity Nonlinearity::bump(Real m, Real zeta) {
  if (!(m > 1 && zeta > 0)) throw Error(ErrorCode::GROWTH_RANGE, "bump needs m > 1, zeta > 0");
  Nonlinearity nl;
  nl.kind = Kind::Bump;
  nl.m = m;
  nl.zeta = zeta;
  // |t^m (zeta - t)| <= zeta (1 + t^{m+1}) + t^{m+1} for t >= 0
  nl.q = m + 2.0;
  nl.a1 = zeta;
  nl.a2 = zeta + 1.0;
  nl.sign_ok = false;  // F eventually turns negative beyond zeta
  nl.one_sided = true;
  return nl;
}

Nonlinearity Nonlinearity::truncated_bump(Real m, Real zeta) {
  if (!(m > 1 && zeta > 0))
    throw Error(ErrorCode::GROWTH_RANGE, "truncated bump needs m > 1, zeta > 0");
  Nonlinearity nl;
  nl.kind = Kind::TruncatedBump;
  nl.m = m;
  nl.zeta = zeta;
  nl.q = m + 1.0;  // f*(t) <= zeta t^m
  nl.a1 = 0;
  nl.a2 = zeta;
  nl.sign_ok = true;
  nl.one_sided = true;
  nl.has_subquadratic = true;
  nl.b = nl.F(zeta);  // F* is constant beyond zeta
  nl.l = 1;
  return nl;
}

Nonlinearity Nonlinearity::tabulated(std::vector<Real> knots, std::vector<Real> values, Real a1,
                                     Real a2, Real q) {
  if (knots.size() != values.size() || knots.size() < 2)
    throw Error(ErrorCode::RANGE, "tabulated nonlinearity needs matching knot/value arrays");
  if (!std::is_sorted(knots.begin(), knots.end()))
    throw Error(ErrorCode::RANGE, "tabulated knots must be sorted");
  Nonlinearity nl;
  nl.kind = Kind::Tabulated;
  nl.knots = std::move(knots);
  nl.knot_values = std::move(values);
  nl.a1 = a1;
  nl.a2 = a2;
  nl.q = q;
  // f vanishes outside the knot range, so F is bounded.
  nl.has_subquadratic = true;
  nl.l = 1;
  Real fmax = 0;
  for (Real v : nl.knot_values) fmax = std::max(fmax, std::abs(v));
  nl.b = fmax * (nl.knots.back() - nl.knots.front());
  return nl;
}

BetaField BetaField::constant_field(Real value) {
  if (!(value > 0)) throw Error(ErrorCode::RANGE, "beta must have positive essential infimum");
  BetaField b;
  b.is_constant = true;
  b.constant = value;
  return b;
}

BetaField BetaField::lattice_field(Point lo, Point hi, int nx, int ny,
                                   std::vector<Real> values) {
  if (nx < 2 || ny < 2 || values.size() != static_cast<size_t>(nx) * ny)
    throw Error(ErrorCode::RANGE, "beta lattice shape mismatch");
  BetaField b;
  b.is_constant = false;
  b.lo = std::move(lo);
  b.hi = std::move(hi);
  b.nx = nx;
  b.ny = ny;
  b.lattice = std::move(values);
  return b;
}

Real BetaField::eval(const Point& x) const {
  if (is_constant) return constant;
  const Real sx = std::clamp((x[0] - lo[0]) / (hi[0] - lo[0]) * (nx - 1), 0.0, nx - 1.0);
  const Real sy = std::clamp((x[1] - lo[1]) / (hi[1] - lo[1]) * (ny - 1), 0.0, ny - 1.0);
  const int i0 = std::min(static_cast<int>(sx), nx - 2);
  const int j0 = std::min(static_cast<int>(sy), ny - 2);
  const Real fx = sx - i0, fy = sy - j0;
  auto at = [&](int i, int j) { return lattice[static_cast<size_t>(j) * nx + i]; };
  return (1 - fx) * (1 - fy) * at(i0, j0) + fx * (1 - fy) * at(i0 + 1, j0) +
         (1 - fx) * fy * at(i0, j0 + 1) + fx * fy * at(i0 + 1, j0 + 1);
}

ProblemInstance make_instance(const DomainSpec& domain, const BetaField& beta,
                              const Nonlinearity& nl, Real lambda, int modes, int quad_order) {
  const Real qmax = domain.critical_exponent();
  if (!(nl.q > 1 && nl.q < qmax))
    throw Error(ErrorCode::GROWTH_RANGE,
                "nonlinearity growth exponent is outside (1, 2n/(n-1)) for this domain");
  ProblemInstance inst;
  inst.domain = domain;
  inst.beta = beta;
  inst.nl = nl;
  inst.lambda = lambda;
  inst.modes = modes;
  inst.quad_order = quad_order;
  inst.basis = make_basis(domain, modes);
  inst.grid = build_quadrature(domain, quad_order, inst.basis->max_angular_mode());
  inst.table = inst.basis->eval_table(inst.grid.points);
  inst.beta_nodes.resize(inst.grid.size());
  for (Index qn = 0; qn < inst.grid.size(); ++qn)
    inst.beta_nodes[qn] = beta.eval(inst.grid.points.row(qn));
  inst.beta0 = inst.beta_nodes.minCoeff();
  inst.beta_sup = inst.beta_nodes.maxCoeff();
  if (!(inst.beta0 > 0))
    throw Error(ErrorCode::RANGE, "beta must have positive essential infimum");
  inst.wbeta = (inst.grid.weights.array() * inst.beta_nodes.array()).matrix();
  return inst;
}

Real Phi(const ProblemInstance& inst, const SpectralField& u) {
  return 0.5 * u.coeffs.array().square().matrix().dot(inst.basis->sqrt_lambdas);
}

Real Psi(const ProblemInstance& inst, const SpectralField& u) {
  const Vector values = inst.trace_values(u);
  Real s = 0;
  for (Index qn = 0; qn < values.size(); ++qn) s += inst.wbeta[qn] * inst.nl.F(values[qn]);
  return s;
}

Real J_lambda(const ProblemInstance& inst, const SpectralField& u) {
  return Phi(inst, u) - inst.lambda * Psi(inst, u);
}

Vector J_gradient_coeffs(const ProblemInstance& inst, const SpectralField& u) {
  const Vector values = inst.trace_values(u);
  Vector fw(values.size());
  for (Index qn = 0; qn < values.size(); ++qn) fw[qn] = inst.wbeta[qn] * inst.nl.f(values[qn]);
  Vector c = inst.table * fw;
  return (u.coeffs.array() * inst.basis->sqrt_lambdas.array() - inst.lambda * c.array())
      .matrix();
}

SpectralField J_gradient(const ProblemInstance& inst, const SpectralField& u) {
  Vector g = J_gradient_coeffs(inst, u);
  g = (g.array() / inst.basis->sqrt_lambdas.array()).matrix();
  return SpectralField(u.basis, std::move(g));
}

Matrix J_hessian_coeffs(const ProblemInstance& inst, const SpectralField& u) {
  const Vector values = inst.trace_values(u);
  Vector fpw(values.size());
  for (Index qn = 0; qn < values.size(); ++qn)
    fpw[qn] = inst.wbeta[qn] * inst.nl.f_prime(values[qn]);
  Matrix h = -inst.lambda * (inst.table * fpw.asDiagonal() * inst.table.transpose());
  h.diagonal() += inst.basis->sqrt_lambdas;
  return h;
}

Real truncated_J(const ProblemInstance& inst, Real gamma, const SpectralField& u) {
  if (!(gamma > 0)) throw Error(ErrorCode::RANGE, "gamma must be positive");
  const Real phi = Phi(inst, u);
  if (phi <= gamma * gamma) return gamma * gamma - inst.lambda * Psi(inst, u);
  return J_lambda(inst, u);
}

Real residual_norm(const ProblemInstance& inst, const SpectralField& u) {
  return h_half_norm(J_gradient(inst, u));
}

}  // namespace sqrtlap
