#include "sqrtlap/cones.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sqrtlap/error.hpp"

namespace sqrtlap {

Real ConeFunction::eval(const Point& x) const {
  const Real r = (x - x0).norm();
  if (r >= tau) return 0;
  if (r <= 0.5 * tau) return rho;
  return 2.0 * rho / tau * (tau - r);
}

ConeFunction make_cone(const DomainSpec& domain, const Point& x0, Real tau, Real rho) {
  if (!(rho >= 0)) throw Error(ErrorCode::RANGE, "cone height must be nonnegative");
  validate_ball(domain, x0, tau);
  ConeFunction cone;
  cone.domain = domain;
  cone.x0 = x0;
  cone.tau = tau;
  cone.rho = rho;
  return cone;
}

Real cone_gradient_energy(const ConeFunction& cone) {
  const int n = cone.domain.dimension();
  return 4.0 * cone.rho * cone.rho * unit_ball_measure(n) * std::pow(cone.tau, n - 2) *
         (1.0 - std::pow(2.0, -n));
}

Real cone_l2(const ConeFunction& cone) {
  const int n = cone.domain.dimension();
  const Real tau = cone.tau, rho = cone.rho;
  const Real wn = unit_ball_measure(n);
  const Real inner = rho * rho * wn * std::pow(0.5 * tau, n);
  // int_{tau/2}^{tau} (tau - r)^2 r^{n-1} dr, antiderivative evaluated exactly
  auto prim = [&](Real r) {
    return tau * tau * std::pow(r, n) / n - 2.0 * tau * std::pow(r, n + 1) / (n + 1.0) +
           std::pow(r, n + 2) / (n + 2.0);
  };
  const Real radial = prim(tau) - prim(0.5 * tau);
  const Real annulus = 4.0 * rho * rho / (tau * tau) * n * wn * radial;
  return inner + annulus;
}

CylinderField as_cylinder_field(const ConeLift& lift, BasisPtr basis) {
  TraceFactor factor;
  const ConeFunction cone = lift.cone;
  factor.eval = [cone](const Point& x) { return cone.eval(x); };
  factor.grad_l2_squared = cone_gradient_energy(cone);
  factor.l2_squared = cone_l2(cone);
  return CylinderField::product(std::move(basis), YProfile::exponential(0.5),
                                std::move(factor));
}

LiftEnergy lift_energy(const ConeLift& lift) {
  LiftEnergy out;
  out.lower = cone_gradient_energy(lift.cone);
  out.upper = out.lower + lift.cone.domain.measure() * lift.cone.rho * lift.cone.rho / 4.0;
  out.value = out.lower + 0.25 * cone_l2(lift.cone);
  if (out.value < out.lower * (1 - 1e-12) || out.value > out.upper * (1 + 1e-12))
    throw Error(ErrorCode::INTERNAL_INCONSISTENCY,
                "lift energy escaped its two-sided bound");
  return out;
}

ProjectionResult project_cone(const ConeFunction& cone, const BasisPtr& basis,
                              int quad_order) {
  ProjectionResult out;
  out.field = project_onto_basis(
      basis, [&cone](const Point& x) { return cone.eval(x); }, quad_order);
  // Relative L2 reconstruction error: ||cone||^2 - sum a_j^2 against the
  // exact cone norm (orthonormal basis).
  const Real cone_sq = cone_l2(cone);
  const Real proj_sq = out.field.coeffs.squaredNorm();
  out.l2_error = cone_sq > 0 ? std::sqrt(std::max<Real>(0, cone_sq - proj_sq) / cone_sq) : 0;
  return out;
}

Real psi_of_cone(const ConeFunction& cone, const BetaField& beta, const Nonlinearity& nl,
                 int radial_order, int angular_order) {
  const int n = cone.domain.dimension();
  // Radial breakpoints: the cone kink at tau/2, plus the radius where the
  // cone crosses a truncation level of F (F kinks there for bump kinds).
  std::vector<Real> cuts = {0.0, 0.5 * cone.tau, cone.tau};
  const bool has_level = nl.kind == Nonlinearity::Kind::TruncatedBump ||
                         nl.kind == Nonlinearity::Kind::Bump;
  if (has_level && nl.zeta > 0 && nl.zeta < cone.rho)
    cuts.push_back(cone.tau * (1.0 - 0.5 * nl.zeta / cone.rho));
  std::sort(cuts.begin(), cuts.end());

  Real total = 0;
  for (size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    Vector r, wr;
    const Real a = cuts[seg];
    const Real b = cuts[seg + 1];
    if (!(b > a)) continue;
    gauss_legendre(radial_order, a, b, r, wr);
    for (int i = 0; i < radial_order; ++i) {
      const Real omega = r[i] <= 0.5 * cone.tau
                             ? cone.rho
                             : 2.0 * cone.rho / cone.tau * (cone.tau - r[i]);
      const Real fval = nl.F(omega);
      if (n == 2) {
        const Real dang = 2.0 * pi() / angular_order;
        for (int t = 0; t < angular_order; ++t) {
          Point x = cone.x0;
          x[0] += r[i] * std::cos(dang * t);
          x[1] += r[i] * std::sin(dang * t);
          total += wr[i] * r[i] * dang * beta.eval(x) * fval;
        }
      } else {
        // 3-D: Gauss-Legendre in mu = cos(theta), uniform in phi.
        Vector mu, wmu;
        gauss_legendre(16, -1.0, 1.0, mu, wmu);
        const int nphi = 32;
        const Real dphi = 2.0 * pi() / nphi;
        for (int im = 0; im < mu.size(); ++im) {
          const Real s = std::sqrt(1.0 - mu[im] * mu[im]);
          for (int ip = 0; ip < nphi; ++ip) {
            Point x = cone.x0;
            x[0] += r[i] * s * std::cos(dphi * ip);
            x[1] += r[i] * s * std::sin(dphi * ip);
            x[2] += r[i] * mu[im];
            total += wr[i] * r[i] * r[i] * wmu[im] * dphi * beta.eval(x) * fval;
          }
        }
      }
    }
  }
  return total;
}

ChainReport verify_competitor_chain(const ProblemInstance& inst, const ConstantsBundle& bundle,
                                    int sup_samples, std::uint64_t seed) {
  if (!inst.nl.sign_ok)
    throw Error(ErrorCode::RANGE,
                "competitor chain requires a nonlinearity with nonnegative potential");
  if (!check_rho_gamma(bundle.rho, bundle.gamma, bundle.g))
    throw Error(ErrorCode::RANGE, "rho sqrt(g) > gamma must hold before the chain runs");

  ChainReport rep;
  rep.tiau2 = true;
  rep.gamma_sq = bundle.gamma * bundle.gamma;

  const ConeFunction cone = make_cone(inst.domain, bundle.x0, bundle.tau, bundle.rho);
  const ConeLift lift{cone};
  const LiftEnergy energy = lift_energy(lift);
  rep.phi_lift = 0.5 * energy.value;
  rep.phigamma_ok = rep.phi_lift > rep.gamma_sq;

  rep.psi_lift = psi_of_cone(cone, inst.beta, inst.nl);
  rep.psi_lower_bound = bundle.beta0 * unit_ball_measure(bundle.n) *
                        std::pow(0.5 * bundle.tau, bundle.n) * inst.nl.F(bundle.rho);
  rep.psi_bound_ok = rep.psi_lift >= rep.psi_lower_bound * (1.0 - 1e-6);

  rep.lambda_in_interval =
      bundle.mu.valid && inst.lambda > bundle.mu.mu1 && inst.lambda < bundle.mu.mu2;
  if (rep.lambda_in_interval) {
    rep.phigamma2_skipped = false;
    rep.j_lift = rep.phi_lift - inst.lambda * rep.psi_lift;
    rep.sup_psi_analytic =
        rep.gamma_sq * chi_bound(rep.gamma_sq, bundle.a1, bundle.a2, bundle.q,
                                 bundle.c1.estimate, bundle.cq.estimate, bundle.beta_sup);
    Real sampled = 0;
    for (int s = 0; s < sup_samples; ++s) {
      std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(s));
      std::uniform_real_distribution<Real> unif(0.5, 1.0);
      const Real radius = std::sqrt(2.0) * bundle.gamma * unif(rng);
      const SpectralField u = random_field(inst.basis, rng(), radius);
      sampled = std::max(sampled, Psi(inst, u));
    }
    rep.sup_psi_sampled = sampled;
    rep.phigamma2_ok = rep.j_lift < rep.gamma_sq - inst.lambda * rep.sup_psi_analytic;
  }

  rep.ok = rep.phigamma_ok && rep.psi_bound_ok && (rep.phigamma2_skipped || rep.phigamma2_ok);
  if (!rep.phigamma_ok)
    rep.failing_clause = "phi(lift) > gamma^2";
  else if (!rep.psi_bound_ok)
    rep.failing_clause = "psi(lift) >= beta0 omega_n (tau/2)^n F(rho)";
  else if (!rep.phigamma2_skipped && !rep.phigamma2_ok)
    rep.failing_clause = "J(lift) < gamma^2 - lambda sup psi";
  return rep;
}

void throw_if_violated(const ChainReport& report) {
  if (!report.ok)
    throw Error(ErrorCode::CHAIN_VIOLATION, "competitor chain failed: " + report.failing_clause);
}

}  // namespace sqrtlap
