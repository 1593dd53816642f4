#include <doctest.h>

#include <cmath>
#include <random>

#include "sqrtlap/cli.hpp"
#include "sqrtlap/error.hpp"
#include "sqrtlap/solvers.hpp"

using namespace sqrtlap;

namespace {

RunConfig worked_disk_config(int modes = 24, int order = 32) {
  RunConfig cfg;
  cfg.domain_kind = "disk";
  cfg.domain_sizes = {1.0};
  cfg.nl_kind = "truncated_bump";
  cfg.nl_m = 2.0;
  cfg.nl_zeta = 1.0;
  cfg.tau = 1.0;
  cfg.lambda = 100.0;
  cfg.modes = modes;
  cfg.quad_order = order;
  cfg.restarts = 8;
  cfg.ascent_steps = 150;
  return cfg;
}

struct Worked {
  Setup setup;
  ProblemInstance inst;
};

Worked make_worked(int modes = 24, int order = 32) {
  Worked w{prepare_setup(worked_disk_config(modes, order)), {}};
  w.inst = make_instance(w.setup.domain, w.setup.beta, w.setup.nl, w.setup.lambda, modes,
                         order);
  return w;
}

// One-mode double well: f(t) = t - t^3 tabulated, J(a) is quartic in the
// single coefficient with minima at +-a_star and a saddle at zero.
ProblemInstance double_well_instance(Real lambda) {
  std::vector<Real> ts, fs;
  for (int i = 0; i <= 600; ++i) {
    const Real t = -3.0 + 6.0 * i / 600;
    ts.push_back(t);
    fs.push_back(t - t * t * t);
  }
  Nonlinearity nl = Nonlinearity::tabulated(ts, fs, 24.0, 0.0, 2.0);
  nl.sign_ok = false;
  return make_instance(DomainSpec::rectangle({pi(), pi()}), BetaField::constant_field(1.0),
                       nl, lambda, 1, 48);
}

}  // namespace

TEST_CASE("ball minimization returns zero for decoupled problems") {
  // f identically zero: J = Phi, the origin is the unique minimum
  const ProblemInstance free_inst =
      make_instance(DomainSpec::disk(1.0), BetaField::constant_field(1.0),
                    Nonlinearity::power(0.0, 2.0), 5.0, 12, 24);
  const SpectralField start = random_field(free_inst.basis, 77, 0.3);
  const CriticalPoint cp = minimize_in_ball(free_inst, 0.5, start);
  CHECK(cp.trivial);
  CHECK(cp.residual < 1e-8);
  CHECK(cp.inside_ball);

  // lambda = 0 behaves identically from any start
  const ProblemInstance zero_lambda =
      make_instance(DomainSpec::disk(1.0), BetaField::constant_field(1.0),
                    Nonlinearity::truncated_bump(2.0, 1.0), 0.0, 12, 24);
  const CriticalPoint cp0 =
      minimize_in_ball(zero_lambda, 0.5, random_field(zero_lambda.basis, 78, 0.4));
  CHECK(cp0.trivial);
}

TEST_CASE("ball minimization on the worked instance is restart-stable") {
  const Worked w = make_worked();
  const Real gamma = w.setup.bundle.gamma;
  const ConeFunction cone =
      make_cone(w.inst.domain, w.setup.bundle.x0, w.setup.bundle.tau, w.setup.bundle.rho);
  SpectralField start = project_cone(cone, w.inst.basis).field;
  start.coeffs *= 0.1 * std::sqrt(2.0) * gamma / h_half_norm(start);

  const CriticalPoint cp = minimize_in_ball(w.inst, gamma, start);
  CHECK(cp.residual < 1e-8);
  CHECK(cp.inside_ball);

  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_real_distribution<Real> unif(0.05, 0.95);
    const SpectralField s =
        random_field(w.inst.basis, rng(), unif(rng) * std::sqrt(2.0) * gamma);
    const CriticalPoint other = minimize_in_ball(w.inst, gamma, s);
    CHECK(x_distance(other.field, cp.field) < 1e-6);
  }
}

TEST_CASE("global minimization leaves the sublevel set on the worked instance") {
  const Worked w = make_worked();
  const Real gamma = w.setup.bundle.gamma;
  const CriticalPoint w2 = global_minimize(w.inst, gamma, &w.setup.bundle);
  CHECK(w2.residual < 1e-8);
  CHECK(w2.phi > gamma * gamma);
  CHECK_FALSE(w2.trivial);
  CHECK(w2.energy < 0.0);  // beats J(0) = 0

  // best-of-starts: no start, in particular the projected competitor, ends lower
  const ConeFunction cone =
      make_cone(w.inst.domain, w.setup.bundle.x0, w.setup.bundle.tau, w.setup.bundle.rho);
  const SpectralField cone_start = project_cone(cone, w.inst.basis).field;
  CHECK(w2.energy <= J_lambda(w.inst, cone_start) + 1e-12);
  CHECK(w2.energy <= 0.0 + 1e-12);

  // nonnegative trace for the one-sided nonlinearity
  CHECK(w2.nonneg_checked);
  CHECK(w2.nonneg_trace);
}

TEST_CASE("global minimization of the free functional returns zero silently") {
  const ProblemInstance free_inst =
      make_instance(DomainSpec::disk(1.0), BetaField::constant_field(1.0),
                    Nonlinearity::power(0.0, 2.0), 5.0, 12, 24);
  const CriticalPoint cp = global_minimize(free_inst, 0.5, nullptr);
  CHECK(cp.trivial);
  CHECK(cp.energy == doctest::Approx(0.0));
}

TEST_CASE("mountain pass on the one-mode double well") {
  const Real lambda = 3.0;
  const ProblemInstance inst = double_well_instance(lambda);
  // closed form: J(a) = (sqrt(2) - lambda) a^2 / 2 + lambda I4 a^4 / 4 with
  // I4 = int phi_1^4 = 9 / (4 pi^2), so a*^2 = (lambda - sqrt(2)) / (lambda I4)
  const Real i4 = 9.0 / (4.0 * pi() * pi());
  const Real a_star = std::sqrt((lambda - std::sqrt(2.0)) / (lambda * i4));

  SpectralField plus = SpectralField::zero(inst.basis);
  plus.coeffs[0] = 0.8;
  SpectralField minus = SpectralField::zero(inst.basis);
  minus.coeffs[0] = -0.8;

  const Real huge_gamma = 1e6;  // ball constraint inactive
  const CriticalPoint w1 = minimize_in_ball(inst, huge_gamma, plus);
  const CriticalPoint w2 = minimize_in_ball(inst, huge_gamma, minus);
  CHECK(w1.field.coeffs[0] == doctest::Approx(a_star).epsilon(2e-3));
  CHECK(w2.field.coeffs[0] == doctest::Approx(-a_star).epsilon(2e-3));
  CHECK(w1.energy < 0.0);

  const CriticalPoint w3 = mountain_pass(inst, w1, w2);
  CHECK(std::abs(w3.field.coeffs[0]) < 1e-7);
  CHECK(w3.energy == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(w3.energy >= std::max(w1.energy, w2.energy) - 1e-9);
  CHECK(w3.residual < 1e-8);

  CHECK_THROWS_AS(mountain_pass(inst, w1, w1), Error);
}

TEST_CASE("three-stage solve on the worked disk instance") {
  const Worked w = make_worked();
  const SolveReport rep = solve_three(w.inst, w.setup.bundle);

  CHECK(rep.guarantees_active);
  REQUIRE(rep.w1.has_value());
  REQUIRE(rep.w2.has_value());
  REQUIRE(rep.w3.has_value());

  CHECK(rep.w1->trivial);  // f(0) = 0 makes the origin the ball minimum here
  CHECK(rep.w1->inside_ball);
  CHECK(rep.w2->phi > w.setup.bundle.gamma * w.setup.bundle.gamma);
  CHECK(rep.w3->residual < 1e-6);
  CHECK(rep.w3->energy >= std::max(rep.w1->energy, rep.w2->energy) - 1e-9);

  CHECK(rep.dist_12 > 1e-3);
  CHECK(rep.dist_13 > 1e-3);
  CHECK(rep.dist_23 > 1e-3);
  CHECK(rep.distinct_nontrivial >= 2);
  CHECK(rep.multiplicity_exhibited);
  CHECK(rep.trivial_count == 1);

  for (const auto& cp : {rep.w2, rep.w3}) {
    CHECK(cp->nonneg_checked);
    CHECK(cp->nonneg_trace);
  }

  // the pass point is a saddle: finite-difference curvature quotients are
  // sign-indefinite (random directions, plus the unstable direction the
  // assembled Hessian suggests)
  {
    const Real eps = 1e-3;
    auto fd_quotient = [&](const Vector& dir) {
      SpectralField up(w.inst.basis, rep.w3->field.coeffs + eps * dir);
      SpectralField dn(w.inst.basis, rep.w3->field.coeffs - eps * dir);
      return (J_lambda(w.inst, up) - 2 * rep.w3->energy + J_lambda(w.inst, dn)) / (eps * eps);
    };
    std::mt19937_64 rng(59);
    int positive = 0;
    for (int trial = 0; trial < 10; ++trial)
      if (fd_quotient(random_field(w.inst.basis, rng()).coeffs) > 0) ++positive;
    CHECK(positive > 0);

    Eigen::SelfAdjointEigenSolver<Matrix> es(J_hessian_coeffs(w.inst, rep.w3->field));
    CHECK(es.eigenvalues()[0] < 0);  // at least one descent direction
    CHECK(fd_quotient(es.eigenvectors().col(0)) < 0);
  }

  // local minimality certificates for the two minima
  std::mt19937_64 rng(53);
  for (const CriticalPoint& cp : {*rep.w1, *rep.w2}) {
    const Real eps = 1e-4 * std::max<Real>(1.0, h_half_norm(cp.field));
    for (int trial = 0; trial < 50; ++trial) {
      const SpectralField v = random_field(w.inst.basis, rng());
      SpectralField probe(w.inst.basis, cp.field.coeffs + eps * v.coeffs);
      CHECK(J_lambda(w.inst, probe) >= cp.energy - 1e-10);
    }
  }
}

TEST_CASE("solve is deterministic for a fixed seed") {
  const Worked w = make_worked(16, 24);
  SolverOptions opts;
  opts.seed = 99;
  const SolveReport a = solve_three(w.inst, w.setup.bundle, opts);
  const SolveReport b = solve_three(w.inst, w.setup.bundle, opts);
  REQUIRE(a.w2.has_value());
  REQUIRE(b.w2.has_value());
  CHECK((a.w2->field.coeffs - b.w2->field.coeffs).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(a.w3.has_value());
  REQUIRE(b.w3.has_value());
  CHECK((a.w3->field.coeffs - b.w3->field.coeffs).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("a supercritical quadratic pins the ball minimizer to the boundary") {
  // f(t) = t with lambda > sqrt(lambda_1): J is negative definite along
  // phi_1, so the constrained minimizer sits on the sublevel boundary.
  const ProblemInstance inst =
      make_instance(DomainSpec::rectangle({pi(), pi()}), BetaField::constant_field(1.0),
                    Nonlinearity::power(1.0, 2.0), 3.0, 8, 48);
  SpectralField start = SpectralField::zero(inst.basis);
  start.coeffs[0] = 0.5;
  try {
    minimize_in_ball(inst, 1.0, start);
    FAIL("expected BOUNDARY_MINIMUM");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BOUNDARY_MINIMUM);
  }
}

TEST_CASE("degenerate configurations report rather than fail") {
  // f identically zero: all three stages sit at the origin
  const ProblemInstance free_inst =
      make_instance(DomainSpec::disk(1.0), BetaField::constant_field(1.0),
                    Nonlinearity::power(0.0, 2.0), 5.0, 12, 24);
  ConstantsBundle bundle;
  bundle.n = 2;
  bundle.tau = 1.0;
  bundle.x0 = free_inst.domain.centroid();
  bundle.omega_n = pi();
  const GeometryConstants geo = geometry_constants(2, 1.0, pi());
  bundle.g = geo.g;
  bundle.h = geo.h;
  bundle.beta0 = bundle.beta_sup = 1.0;
  bundle.gamma = 0.5;
  bundle.rho = 0.5;
  const SolveReport rep = solve_three(free_inst, bundle);
  CHECK_FALSE(rep.guarantees_active);
  CHECK(rep.w1.has_value());
  CHECK(rep.w2.has_value());
  CHECK_FALSE(rep.w3.has_value());  // the minima coincide, no pass to run
  CHECK(rep.distinct_nontrivial == 0);
  bool noted = false;
  for (const auto& m : rep.messages)
    if (m.find("multiplicity not exhibited") != std::string::npos) noted = true;
  CHECK(noted);
}
