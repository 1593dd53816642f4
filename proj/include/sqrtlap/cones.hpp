#pragma once

#include <string>

#include "sqrtlap/constants.hpp"
#include "sqrtlap/energy.hpp"
#include "sqrtlap/extension.hpp"

namespace sqrtlap {

/// Truncated cone of height rho: flat on B(x0, tau/2), linear decay to zero
/// on the annulus, zero outside B(x0, tau).
struct ConeFunction {
  DomainSpec domain;
  Point x0;
  Real tau = 0;
  Real rho = 0;

  Real eval(const Point& x) const;
};

/// Validates B(x0, tau) inside the domain.
ConeFunction make_cone(const DomainSpec& domain, const Point& x0, Real tau, Real rho);

/// int |grad cone|^2 = 4 rho^2 omega_n tau^{n-2} (1 - 2^{-n}), exactly.
Real cone_gradient_energy(const ConeFunction& cone);

/// Exact int cone^2 (radial polynomial integral over ball plus annulus).
Real cone_l2(const ConeFunction& cone);

/// Cylinder lift exp(-y/2) cone(x).
struct ConeLift {
  ConeFunction cone;
};

/// The lift as a product-tagged cylinder field with exact x-integrals.
CylinderField as_cylinder_field(const ConeLift& lift, BasisPtr basis);

/// Exact squared cylinder norm of the lift with the two-sided sandwich
/// [grad energy, grad energy + |Omega| rho^2 / 4] verified.
struct LiftEnergy {
  Real value = 0;
  Real lower = 0;
  Real upper = 0;
};
LiftEnergy lift_energy(const ConeLift& lift);

/// L2 projection of the cone onto the Galerkin basis, with the relative L2
/// reconstruction error.
struct ProjectionResult {
  SpectralField field;
  Real l2_error = 0;
};
ProjectionResult project_cone(const ConeFunction& cone, const BasisPtr& basis,
                              int quad_order = 64);

/// int beta F(cone) over the cone support, by a composite polar rule around
/// x0 (split at tau/2 where the cone kinks).
Real psi_of_cone(const ConeFunction& cone, const BetaField& beta, const Nonlinearity& nl,
                 int radial_order = 64, int angular_order = 128);

/// Certifies the competitor chain: the lift leaves the gamma sublevel set,
/// its Psi dominates the ball lower bound, and for lambda in (mu1, mu2) its
/// energy drops below the truncated level gamma^2 - lambda sup Psi (using
/// the analytic sublevel bound for the sup, plus a sampled lower estimate).
struct ChainReport {
  bool tiau2 = false;
  Real phi_lift = 0;
  Real gamma_sq = 0;
  bool phigamma_ok = false;

  Real psi_lift = 0;
  Real psi_lower_bound = 0;
  bool psi_bound_ok = false;

  bool lambda_in_interval = false;
  Real j_lift = 0;
  Real sup_psi_analytic = 0;  // sublevel bound at r = gamma^2
  Real sup_psi_sampled = 0;   // Monte-Carlo lower estimate
  bool phigamma2_ok = false;
  bool phigamma2_skipped = true;

  bool ok = false;
  std::string failing_clause;
};

ChainReport verify_competitor_chain(const ProblemInstance& inst, const ConstantsBundle& bundle,
                                    int sup_samples = 200, std::uint64_t seed = 12345);

/// Raises CHAIN_VIOLATION naming the failing clause.
void throw_if_violated(const ChainReport& report);

}  // namespace sqrtlap
