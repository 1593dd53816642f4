#pragma once

#include <functional>

#include "sqrtlap/domain.hpp"
#include "sqrtlap/function_space.hpp"

namespace sqrtlap {

using PotentialFn = std::function<Real(Real)>;

/// Lebesgue measure of the unit ball in R^n, via the recurrence
/// omega_n = (2 pi / n) omega_{n-2}.
Real unit_ball_measure(int n);

/// g = (2^n - 1) / 2^{n-1} tau^{n-2} omega_n and h = g + |Omega| / 8.
struct GeometryConstants {
  Real g = 0;
  Real h = 0;
};
GeometryConstants geometry_constants(int n, Real tau, Real domain_measure);

/// K1 = sqrt(2) c1 h ||beta|| / (omega_n beta0) (2/tau)^n and the companion
/// K2 with the c_q^q / q factor. Requires q in (1, 2n/(n-1)).
struct KConstants {
  Real k1 = 0;
  Real k2 = 0;
};
KConstants k_constants(int n, Real tau, Real beta0, Real beta_sup, Real c1, Real cq, Real q,
                       Real h);

/// Margin of the algebraic hypothesis F(rho)/rho^2 > a1 K1/gamma + a2 K2 gamma^{q-2}.
struct AlgebraicCheck {
  bool holds = false;
  Real margin = 0;
};
AlgebraicCheck check_AI(Real rho, Real gamma, Real a1, Real a2, Real q, Real k1, Real k2,
                        const PotentialFn& F);

/// rho sqrt(g) > gamma (strict).
bool check_rho_gamma(Real rho, Real gamma, Real g);

/// Upper bound on the sublevel ratio chi(r):
/// sqrt(2/r) a1 c1 ||beta|| + 2^{q/2} a2 c_q^q / q r^{q/2-1} ||beta||.
Real chi_bound(Real r, Real a1, Real a2, Real q, Real c1, Real cq, Real beta_sup);

/// Parameter interval endpoints; valid when mu1 < mu2.
struct MuInterval {
  Real mu1 = 0;
  Real mu2 = 0;
  bool valid = false;
};
MuInterval mu_interval(int n, Real tau, Real omega_n, Real beta0, Real h, Real gamma, Real rho,
                       Real a1, Real a2, Real q, Real k1, Real k2, const PotentialFn& F);

/// Threshold lambda_star = (2^n h / (omega_n tau^n beta0)) inf_{0<rho<=zeta} rho^2/F(rho),
/// with the minimizing rho_bar (dense scan plus golden-section refinement).
struct LambdaStar {
  Real value = 0;
  Real rho_bar = 0;
  Real inf_ratio = 0;  // inf rho^2 / F(rho)
};
LambdaStar lambda_star(int n, Real tau, Real omega_n, Real beta0, Real h, Real zeta,
                       const PotentialFn& F);

/// The gamma pick of the two-solution argument, with a 0.99 safety factor on
/// the strict minimum gamma < min{sqrt(g) rho_bar, (2^n h/(a2 omega_n tau^n
/// beta0 K2 lambda))^{1/(m-1)}}.
Real recommended_gamma(int n, Real tau, Real omega_n, Real beta0, Real g, Real h, Real a2,
                       Real m, Real k2, Real lambda, Real rho_bar);

/// Everything the variational argument needs in one record. Interval
/// endpoints inherit the estimated (not certified) embedding constants, so
/// the whole bundle is flagged indicative.
struct ConstantsBundle {
  int n = 2;
  Real tau = 0;
  Point x0;
  Real omega_n = 0;
  Real g = 0;
  Real h = 0;
  Real beta0 = 0;
  Real beta_sup = 0;
  Real a1 = 0;
  Real a2 = 0;
  Real q = 0;
  EmbeddingConstants c1;
  EmbeddingConstants cq;
  Real k1 = 0;
  Real k2 = 0;
  Real gamma = 0;
  Real rho = 0;
  MuInterval mu;
  bool has_lambda_star = false;
  LambdaStar lstar;
  AlgebraicCheck ai;
  bool aii_present = false;
  bool tiau2_holds = false;
  bool indicative = true;
};

/// Checks B(x0, tau) lies inside the domain; throws RANGE when tau exceeds
/// the distance from x0 to the boundary.
void validate_ball(const DomainSpec& domain, const Point& x0, Real tau);

}  // namespace sqrtlap
