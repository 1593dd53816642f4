#include "sqrtlap/constants.hpp"

#include <cmath>

#include "sqrtlap/error.hpp"

namespace sqrtlap {

Real unit_ball_measure(int n) {
  if (n < 1) throw Error(ErrorCode::RANGE, "unit ball measure needs n >= 1");
  if (n == 1) return 2.0;
  if (n == 2) return pi();
  return (2.0 * pi() / n) * unit_ball_measure(n - 2);
}

GeometryConstants geometry_constants(int n, Real tau, Real domain_measure) {
  if (!(tau > 0)) throw Error(ErrorCode::RANGE, "tau must be positive");
  GeometryConstants out;
  out.g = (std::pow(2.0, n) - 1.0) / std::pow(2.0, n - 1) * std::pow(tau, n - 2) *
          unit_ball_measure(n);
  out.h = out.g + domain_measure / 8.0;
  return out;
}

KConstants k_constants(int n, Real tau, Real beta0, Real beta_sup, Real c1, Real cq, Real q,
                       Real h) {
  const Real qmax = 2.0 * n / (n - 1.0);
  if (!(q > 1.0 && q < qmax))
    throw Error(ErrorCode::GROWTH_RANGE, "growth exponent q must lie in (1, 2n/(n-1))");
  if (!(beta0 > 0 && beta_sup >= beta0 && c1 > 0 && cq > 0 && tau > 0 && h > 0))
    throw Error(ErrorCode::RANGE, "k_constants inputs must be positive with beta_sup >= beta0");
  const Real common = h * beta_sup / (unit_ball_measure(n) * beta0) * std::pow(2.0 / tau, n);
  KConstants out;
  out.k1 = std::sqrt(2.0) * c1 * common;
  out.k2 = std::pow(2.0, 0.5 * q) * std::pow(cq, q) / q * common;
  return out;
}

AlgebraicCheck check_AI(Real rho, Real gamma, Real a1, Real a2, Real q, Real k1, Real k2,
                        const PotentialFn& F) {
  if (!(rho > 0 && gamma > 0)) throw Error(ErrorCode::RANGE, "rho and gamma must be positive");
  AlgebraicCheck out;
  out.margin = F(rho) / (rho * rho) - (a1 * k1 / gamma + a2 * k2 * std::pow(gamma, q - 2.0));
  out.holds = out.margin > 0;
  return out;
}

bool check_rho_gamma(Real rho, Real gamma, Real g) {
  if (!(rho > 0 && gamma > 0 && g > 0))
    throw Error(ErrorCode::RANGE, "check_rho_gamma inputs must be positive");
  return rho * std::sqrt(g) > gamma;
}

Real chi_bound(Real r, Real a1, Real a2, Real q, Real c1, Real cq, Real beta_sup) {
  if (!(r > 0)) throw Error(ErrorCode::RANGE, "sublevel radius must be positive");
  return std::sqrt(2.0 / r) * a1 * c1 * beta_sup +
         std::pow(2.0, 0.5 * q) * a2 * std::pow(cq, q) / q * std::pow(r, 0.5 * q - 1.0) *
             beta_sup;
}

MuInterval mu_interval(int n, Real tau, Real omega_n, Real beta0, Real h, Real gamma, Real rho,
                       Real a1, Real a2, Real q, Real k1, Real k2, const PotentialFn& F) {
  if (!(gamma > 0 && rho > 0)) throw Error(ErrorCode::RANGE, "gamma and rho must be positive");
  const Real frho = F(rho);
  if (!(frho > 0))
    throw Error(ErrorCode::POTENTIAL_NONPOSITIVE, "F(rho) must be positive for mu1");
  MuInterval out;
  const Real front = std::pow(2.0, n) / (std::pow(tau, n) * omega_n * beta0);
  out.mu1 = front * h * rho * rho / frho;
  out.mu2 = front * h * gamma / (a1 * k1 + a2 * k2 * std::pow(gamma, q - 1.0));
  out.valid = out.mu1 < out.mu2;
  return out;
}

LambdaStar lambda_star(int n, Real tau, Real omega_n, Real beta0, Real h, Real zeta,
                       const PotentialFn& F) {
  if (!(zeta > 0)) throw Error(ErrorCode::RANGE, "zeta must be positive");
  // Maximize M(rho) = F(rho)/rho^2 on (0, zeta]; inf rho^2/F is its reciprocal.
  // A vanishing M near 0 simply contributes nothing to the supremum.
  auto ratio = [&](Real rho) { return F(rho) / (rho * rho); };
  const int scan = 4096;
  Real best = -std::numeric_limits<Real>::max();
  int best_i = -1;
  for (int i = 1; i <= scan; ++i) {
    const Real rho = zeta * i / scan;
    const Real m = ratio(rho);
    if (m > best) {
      best = m;
      best_i = i;
    }
  }
  if (!(best > 0))
    throw Error(ErrorCode::NO_ADMISSIBLE_RHO, "F is nonpositive on (0, zeta]");

  Real lo = zeta * std::max(1, best_i - 1) / scan;
  Real hi = zeta * std::min(scan, best_i + 1) / scan;
  const Real gr = 0.5 * (std::sqrt(5.0) - 1.0);
  Real x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  Real f1 = ratio(x1), f2 = ratio(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * zeta; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = ratio(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = ratio(x1);
    }
  }
  LambdaStar out;
  out.rho_bar = 0.5 * (lo + hi);
  const Real m = std::max({best, f1, f2, ratio(out.rho_bar)});
  out.inf_ratio = 1.0 / m;
  out.value = std::pow(2.0, n) * h / (omega_n * std::pow(tau, n) * beta0) * out.inf_ratio;
  return out;
}

Real recommended_gamma(int n, Real tau, Real omega_n, Real beta0, Real g, Real h, Real a2,
                       Real m, Real k2, Real lambda, Real rho_bar) {
  if (!(m > 1)) throw Error(ErrorCode::GROWTH_RANGE, "the bump exponent must exceed 1");
  const Real branch1 = std::sqrt(g) * rho_bar;
  const Real branch2 = std::pow(
      std::pow(2.0, n) * h / (a2 * omega_n * std::pow(tau, n) * beta0 * k2 * lambda),
      1.0 / (m - 1.0));
  return 0.99 * std::min(branch1, branch2);
}

void validate_ball(const DomainSpec& domain, const Point& x0, Real tau) {
  if (x0.size() != domain.dimension())
    throw Error(ErrorCode::RANGE, "ball center dimension mismatch");
  if (!domain.contains(x0))
    throw Error(ErrorCode::RANGE, "ball center lies outside the domain");
  const Real dist = domain.distance_to_boundary(x0);
  if (tau > dist * (1.0 + 1e-12))
    throw Error(ErrorCode::RANGE, "tau exceeds the distance from x0 to the boundary");
}

}  // namespace sqrtlap
