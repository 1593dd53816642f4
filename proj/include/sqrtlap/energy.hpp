#pragma once

#include <vector>

#include "sqrtlap/constants.hpp"
#include "sqrtlap/function_space.hpp"
#include "sqrtlap/quadrature.hpp"

namespace sqrtlap {

/// Continuous nonlinearity f with its potential F and the certificates the
/// variational argument consumes: growth |f(t)| <= a1 + a2 |t|^{q-1}, the
/// sign of F on [0, inf), and the subquadratic bound F <= b (1 + |t|^l).
/// One-sided nonlinearities are extended by f = 0 for t <= 0.
struct Nonlinearity {
  enum class Kind { Power, Bump, TruncatedBump, Tabulated };

  Kind kind = Kind::Power;
  Real scale = 1;  // power prefactor
  Real m = 2;      // bump exponent
  Real zeta = 1;   // bump root / truncation point
  std::vector<Real> knots, knot_values;  // tabulated, linear interpolation, 0 outside

  Real a1 = 0, a2 = 0, q = 2;
  bool sign_ok = false;
  bool one_sided = false;  // f = 0 on t <= 0; solutions checked for nonnegativity
  bool has_subquadratic = false;
  Real b = 0, l = 1;

  Real f(Real t) const;
  Real f_prime(Real t) const;
  Real F(Real t) const;

  static Nonlinearity power(Real scale, Real growth);
  static Nonlinearity bump(Real m, Real zeta);
  static Nonlinearity truncated_bump(Real m, Real zeta);
  static Nonlinearity tabulated(std::vector<Real> knots, std::vector<Real> values, Real a1,
                                Real a2, Real q);
};

/// Closed-form potential for builtin kinds; adaptive quadrature (1e-10)
/// for tabulated data.
Real potential_F(const Nonlinearity& nl, Real t);

/// Weight beta: constant, or bilinear interpolation of a uniform lattice.
struct BetaField {
  bool is_constant = true;
  Real constant = 1;
  int nx = 0, ny = 0;
  Point lo, hi;
  std::vector<Real> lattice;  // row-major, ny rows of nx values

  Real eval(const Point& x) const;

  static BetaField constant_field(Real value);
  static BetaField lattice_field(Point lo, Point hi, int nx, int ny, std::vector<Real> values);
};

/// A Galerkin-truncated instance of A_{1/2} u = lambda beta f(u): basis,
/// quadrature grid and the precomputed mode-by-node table. Construction is
/// exclusive; evaluation on a built instance is read-only.
struct ProblemInstance {
  DomainSpec domain;
  BetaField beta;
  Nonlinearity nl;
  Real lambda = 0;
  int modes = 0;
  int quad_order = 0;

  BasisPtr basis;
  QuadratureGrid grid;
  Matrix table;        // modes x nodes
  Vector beta_nodes;   // beta at quadrature nodes
  Vector wbeta;        // weights * beta
  Real beta0 = 0;
  Real beta_sup = 0;

  Vector trace_values(const SpectralField& u) const { return table.transpose() * u.coeffs; }
};

ProblemInstance make_instance(const DomainSpec& domain, const BetaField& beta,
                              const Nonlinearity& nl, Real lambda, int modes,
                              int quad_order = 64);

/// Phi(u) = 1/2 sum a_j^2 sqrt(lambda_j) (the exact cylinder norm of the
/// harmonic extension).
Real Phi(const ProblemInstance& inst, const SpectralField& u);

/// Psi(u) = int beta F(u) dx by quadrature.
Real Psi(const ProblemInstance& inst, const SpectralField& u);

/// J_lambda = Phi - lambda Psi.
Real J_lambda(const ProblemInstance& inst, const SpectralField& u);

/// Riesz representer of J' in the X inner product:
/// component j is a_j - lambda lambda_j^{-1/2} int beta f(u) phi_j.
SpectralField J_gradient(const ProblemInstance& inst, const SpectralField& u);

/// Coefficient-space gradient dJ/da_j = a_j sqrt(lambda_j) - lambda int beta f(u) phi_j.
Vector J_gradient_coeffs(const ProblemInstance& inst, const SpectralField& u);

/// Coefficient-space Hessian diag(sqrt(lambda)) - lambda Phi diag(w beta f'(u)) Phi^T.
Matrix J_hessian_coeffs(const ProblemInstance& inst, const SpectralField& u);

/// gamma^2 - lambda Psi(u) inside the sublevel set Phi <= gamma^2, J_lambda outside.
Real truncated_J(const ProblemInstance& inst, Real gamma, const SpectralField& u);

/// X-norm of the gradient representer (subspace dual norm of J').
Real residual_norm(const ProblemInstance& inst, const SpectralField& u);

}  // namespace sqrtlap
