#include "sqrtlap/solvers.hpp"

#include <cmath>
#include <random>

#include "sqrtlap/error.hpp"

namespace sqrtlap {

namespace {

Real x_norm(const SpectralField& u) { return h_half_norm(u); }

void clamp_to_radius(SpectralField& u, Real radius) {
  const Real nrm = x_norm(u);
  if (nrm > radius) u.coeffs *= radius / nrm;
}

struct DescentState {
  SpectralField u;
  Real energy = 0;
  Real residual = 0;
  int iterations = 0;
  bool converged = false;
  bool boundary_pinned = false;
};

// Armijo-backtracked gradient descent with optional ball projection and
// Newton refinement once the residual is small. ball_radius < 0 means
// unconstrained.
DescentState descend(const ProblemInstance& inst, SpectralField u, Real tol, int max_iter,
                     Real ball_radius, const SolverOptions& opts) {
  DescentState st;
  if (ball_radius > 0) clamp_to_radius(u, ball_radius);
  Real energy = J_lambda(inst, u);
  int it = 0;
  for (; it < max_iter; ++it) {
    const SpectralField grad = J_gradient(inst, u);
    const Real res = x_norm(grad);
    const Real unorm = x_norm(u);
    if (res < tol) {
      st.converged = true;
      st.boundary_pinned = ball_radius > 0 && unorm >= ball_radius * (1 - 1e-9);
      break;
    }

    // Newton refinement: accept steps that shrink the residual and respect
    // the ball. Falls back to the gradient step otherwise.
    if (res < 1e-2) {
      Eigen::PartialPivLU<Matrix> lu(J_hessian_coeffs(inst, u));
      Vector delta = lu.solve(-J_gradient_coeffs(inst, u));
      SpectralField trial(u.basis, u.coeffs + delta);
      bool ok = trial.coeffs.allFinite();
      if (ok && ball_radius > 0 && x_norm(trial) > ball_radius) ok = false;
      if (ok) {
        const Real trial_res = residual_norm(inst, trial);
        const Real trial_energy = J_lambda(inst, trial);
        if (trial_res < 0.5 * res && trial_energy <= energy + 1e-12 * (1 + std::abs(energy))) {
          u = trial;
          energy = trial_energy;
          continue;
        }
      }
    }

    Real step = 1.0;
    bool moved = false;
    while (step > 1e-18) {
      SpectralField trial(u.basis, u.coeffs - step * grad.coeffs);
      if (ball_radius > 0) clamp_to_radius(trial, ball_radius);
      const Real predicted = h_half_inner(grad, SpectralField(u.basis, u.coeffs - trial.coeffs));
      const Real trial_energy = J_lambda(inst, trial);
      if (trial_energy <= energy - opts.armijo_c1 * std::max<Real>(predicted, 0) &&
          trial_energy < energy) {
        u = trial;
        energy = trial_energy;
        moved = true;
        break;
      }
      step *= opts.armijo_backtrack;
    }
    if (!moved) {
      // No descent direction left at this scale.
      st.boundary_pinned = ball_radius > 0 && unorm >= ball_radius * (1 - 1e-6);
      break;
    }
  }
  st.u = u;
  st.energy = energy;
  st.residual = residual_norm(inst, u);
  st.iterations = it;
  if (!st.converged && st.residual < tol) st.converged = true;
  return st;
}

CriticalPoint classify(const ProblemInstance& inst, const SpectralField& u, Real gamma,
                       Real tol_zero, int iterations) {
  CriticalPoint cp;
  cp.field = u;
  cp.energy = J_lambda(inst, u);
  cp.phi = Phi(inst, u);
  cp.residual = residual_norm(inst, u);
  const Vector values = inst.trace_values(u);
  cp.trace_sup = values.array().abs().maxCoeff();
  cp.trace_min = values.minCoeff();
  cp.trivial = x_norm(u) < tol_zero;
  cp.nonneg_checked = inst.nl.one_sided;
  cp.nonneg_trace = cp.trace_min >= -1e-6 * std::max<Real>(1.0, cp.trace_sup);
  cp.inside_ball = gamma > 0 && cp.phi < gamma * gamma;
  cp.iterations = iterations;
  return cp;
}

// Newton iteration on J' = 0 for saddle refinement; indefinite Hessians are
// fine here. Returns false on divergence.
bool newton_polish(const ProblemInstance& inst, SpectralField& u, Real tol, Real step_cap,
                   int max_iter = 60) {
  Real res0 = residual_norm(inst, u);
  for (int it = 0; it < max_iter; ++it) {
    const Real res = residual_norm(inst, u);
    if (res < tol) return true;
    if (!std::isfinite(res) || res > 1e3 * (res0 + 1)) return false;
    Eigen::PartialPivLU<Matrix> lu(J_hessian_coeffs(inst, u));
    Vector delta = lu.solve(-J_gradient_coeffs(inst, u));
    if (!delta.allFinite()) return false;
    SpectralField d(u.basis, delta);
    const Real dn = x_norm(d);
    if (dn > step_cap) d.coeffs *= step_cap / dn;
    u.coeffs += d.coeffs;
  }
  return residual_norm(inst, u) < tol;
}

}  // namespace

Real x_distance(const SpectralField& a, const SpectralField& b) {
  SpectralField d(a.basis, a.coeffs - b.coeffs);
  return h_half_norm(d);
}

CriticalPoint minimize_in_ball(const ProblemInstance& inst, Real gamma,
                               const SpectralField& init, const SolverOptions& opts,
                               std::vector<std::string>* warnings) {
  if (!(gamma > 0)) throw Error(ErrorCode::RANGE, "gamma must be positive");
  const Real radius = (1.0 - 1e-9) * std::sqrt(2.0) * gamma;
  DescentState st = descend(inst, init, opts.tol_res, opts.max_iter, radius, opts);
  if (st.converged && st.boundary_pinned)
    throw Error(ErrorCode::BOUNDARY_MINIMUM,
                "the ball minimizer pinned to the sublevel boundary");
  if (!st.converged) {
    if (st.boundary_pinned)
      throw Error(ErrorCode::BOUNDARY_MINIMUM,
                  "descent stalled on the sublevel boundary before reaching tolerance");
    throw Error(ErrorCode::NO_CONVERGENCE, "ball minimization hit the iteration cap");
  }
  if (warnings && x_norm(st.u) > 0.9 * radius)
    warnings->push_back("ball minimizer lies within 10% of the sublevel boundary");
  const Real tol_zero = 1e-8 * std::sqrt(2.0) * gamma;
  return classify(inst, st.u, gamma, tol_zero, st.iterations);
}

CriticalPoint global_minimize(const ProblemInstance& inst, Real gamma,
                              const ConstantsBundle* bundle, const SolverOptions& opts,
                              std::vector<std::string>* warnings) {
  if (warnings && !inst.nl.has_subquadratic)
    warnings->push_back(
        "no subquadratic certificate: the functional may be unbounded below");

  std::vector<SpectralField> starts;
  if (bundle) {
    const ConeFunction cone = make_cone(inst.domain, bundle->x0, bundle->tau, bundle->rho);
    starts.push_back(project_cone(cone, inst.basis, inst.quad_order).field);
  }
  const Real base = std::sqrt(2.0) * gamma;
  int k = 0;
  for (Real scale : {0.5, 1.0, 2.0, 4.0})
    starts.push_back(random_field(inst.basis, opts.seed + 17 * (++k), scale * base));
  starts.push_back(SpectralField::zero(inst.basis));

  std::optional<DescentState> best;
  int total_iters = 0;
  for (const SpectralField& s : starts) {
    DescentState st = descend(inst, s, opts.tol_res, opts.max_iter, -1.0, opts);
    total_iters += st.iterations;
    if (!st.converged) continue;
    if (!best || st.energy < best->energy) best = st;
  }
  if (!best) throw Error(ErrorCode::NO_CONVERGENCE, "no descent run reached tolerance");

  const Real tol_zero = 1e-8 * std::sqrt(2.0) * gamma;
  CriticalPoint cp = classify(inst, best->u, gamma, tol_zero, total_iters);
  if (bundle && bundle->mu.valid && bundle->ai.holds && inst.lambda > bundle->mu.mu1 &&
      inst.lambda < bundle->mu.mu2 && !(cp.phi > gamma * gamma)) {
    throw Error(ErrorCode::THEOREM_VIOLATION,
                "certified global minimum failed to leave the gamma sublevel set "
                "(under-resolution suspected)");
  }
  return cp;
}

CriticalPoint mountain_pass(const ProblemInstance& inst, const CriticalPoint& w1,
                            const CriticalPoint& w2, const SolverOptions& opts) {
  const Real delta_dist =
      1e-3 * std::max({1.0, x_norm(w1.field), x_norm(w2.field)});
  if (!(w1.residual < opts.tol_res) || !(w2.residual < opts.tol_res))
    throw Error(ErrorCode::RANGE, "mountain pass endpoints must be certified critical points");
  if (x_distance(w1.field, w2.field) <= delta_dist)
    throw Error(ErrorCode::RANGE, "mountain pass endpoints must be distinct");

  const int P = opts.path_nodes;
  std::vector<SpectralField> path(P + 1, SpectralField::zero(inst.basis));
  for (int i = 0; i <= P; ++i) {
    const Real s = static_cast<Real>(i) / P;
    path[i] = SpectralField(inst.basis, (1 - s) * w1.field.coeffs + s * w2.field.coeffs);
  }

  auto redistribute = [&](std::vector<SpectralField>& nodes) {
    std::vector<Real> cum(nodes.size(), 0);
    for (size_t i = 1; i < nodes.size(); ++i)
      cum[i] = cum[i - 1] + x_distance(nodes[i], nodes[i - 1]);
    const Real total = cum.back();
    if (total <= 0) return;
    std::vector<SpectralField> fresh = nodes;
    size_t seg = 1;
    for (int i = 1; i < P; ++i) {
      const Real target = total * i / P;
      while (seg < nodes.size() - 1 && cum[seg] < target) ++seg;
      const Real t = (target - cum[seg - 1]) / std::max<Real>(cum[seg] - cum[seg - 1], 1e-300);
      fresh[i] = SpectralField(inst.basis,
                               (1 - t) * nodes[seg - 1].coeffs + t * nodes[seg].coeffs);
    }
    nodes.swap(fresh);
  };

  const Real jmax_floor = std::max(w1.energy, w2.energy);
  const Real spacing = x_distance(w1.field, w2.field) / P;

  // Newton attempt from the current ridge node; accepts only a certified
  // saddle away from both endpoints and above their level.
  auto try_polish = [&](const SpectralField& node, int it,
                        std::optional<CriticalPoint>& out) {
    SpectralField candidate = node;
    if (!newton_polish(inst, candidate, opts.tol_res, 4.0 * spacing)) return false;
    const Real d1 = x_distance(candidate, w1.field);
    const Real d2 = x_distance(candidate, w2.field);
    if (d1 <= delta_dist || d2 <= delta_dist)
      throw Error(ErrorCode::MP_COLLAPSE, "path maximum converged onto an endpoint minimum");
    if (J_lambda(inst, candidate) < jmax_floor - 1e-9) return false;
    const Real tol_zero = 1e-8 * std::max<Real>(1.0, x_norm(candidate));
    out = classify(inst, candidate, -1.0, tol_zero, it);
    return true;
  };

  Real polish_trigger = 1e-2;
  for (int it = 0; it < opts.max_iter; ++it) {
    int imax = 1;
    Real jmax = -std::numeric_limits<Real>::max();
    for (int i = 1; i < P; ++i) {
      const Real j = J_lambda(inst, path[i]);
      if (j > jmax) {
        jmax = j;
        imax = i;
      }
    }

    SpectralField& top = path[imax];
    const SpectralField grad = J_gradient(inst, top);
    const Real res = x_norm(grad);

    if (res < polish_trigger || it % 25 == 24) {
      std::optional<CriticalPoint> found;
      if (try_polish(top, it, found)) return *found;
      polish_trigger *= 0.5;  // not in the Newton basin yet, keep relaxing
      if (polish_trigger < 1e-15)
        throw Error(ErrorCode::NO_CONVERGENCE, "saddle refinement kept failing");
    }

    // Armijo descent on the maximal node, displacement capped by the node
    // spacing so the ridge is tracked rather than jumped off.
    Real step = std::min(1.0, 0.5 * spacing / std::max(res, 1e-300));
    Real energy = jmax;
    while (step > 1e-18) {
      SpectralField trial(inst.basis, top.coeffs - step * grad.coeffs);
      const Real trial_energy = J_lambda(inst, trial);
      if (trial_energy <= energy - opts.armijo_c1 * step * res * res) {
        top = trial;
        break;
      }
      step *= opts.armijo_backtrack;
    }

    const Real dmin = std::min(x_distance(top, w1.field), x_distance(top, w2.field));
    if (dmin <= delta_dist)
      throw Error(ErrorCode::MP_COLLAPSE, "path maximum collapsed into an endpoint basin");
    redistribute(path);
  }
  throw Error(ErrorCode::NO_CONVERGENCE, "mountain pass hit the iteration cap");
}

SolveReport solve_three(const ProblemInstance& inst, const ConstantsBundle& bundle,
                        const SolverOptions& opts) {
  SolveReport report;
  report.bundle = bundle;
  report.guarantees_active = bundle.mu.valid && inst.lambda > bundle.mu.mu1 &&
                             inst.lambda < bundle.mu.mu2;
  if (!report.guarantees_active)
    report.messages.push_back(
        "lambda outside a valid (mu1, mu2): exploratory mode, guarantees disabled");
  if (!(inst.lambda < bundle.mu.mu2))
    report.messages.push_back("lambda >= mu2: the ball minimum guarantee lapses");

  const Real gamma = bundle.gamma;
  const Real tol_zero = 1e-8 * std::sqrt(2.0) * gamma;

  // Stage 1: local minimum in the gamma ball, started at a small multiple of
  // the projected cone competitor.
  const ConeFunction cone = make_cone(inst.domain, bundle.x0, bundle.tau, bundle.rho);
  SpectralField cone_proj = project_cone(cone, inst.basis, inst.quad_order).field;
  SpectralField ball_start = cone_proj;
  const Real cone_norm = h_half_norm(cone_proj);
  if (cone_norm > 0)
    ball_start.coeffs *= 0.1 * std::sqrt(2.0) * gamma / cone_norm;
  report.w1 = minimize_in_ball(inst, gamma, ball_start, opts, &report.messages);

  // Stage 2: global minimum of the truncated functional.
  report.w2 = global_minimize(inst, gamma, &bundle, opts, &report.messages);

  // Stage 3: mountain pass between the two, when they are distinct minima.
  report.dist_12 = x_distance(report.w1->field, report.w2->field);
  const Real delta_dist =
      1e-3 * std::max({1.0, h_half_norm(report.w1->field), h_half_norm(report.w2->field)});
  if (report.dist_12 > delta_dist) {
    report.w3 = mountain_pass(inst, *report.w1, *report.w2, opts);
    report.dist_13 = x_distance(report.w1->field, report.w3->field);
    report.dist_23 = x_distance(report.w2->field, report.w3->field);
  } else {
    report.messages.push_back("multiplicity not exhibited: the two minima coincide");
  }

  std::vector<const CriticalPoint*> pts;
  for (const auto& w : {&report.w1, &report.w2, &report.w3})
    if (w->has_value()) pts.push_back(&w->value());
  for (const CriticalPoint* p : pts)
    if (p->trivial) ++report.trivial_count;

  // Count pairwise-distinct nontrivial solutions.
  std::vector<const CriticalPoint*> kept;
  for (const CriticalPoint* p : pts) {
    if (p->trivial || h_half_norm(p->field) < tol_zero) continue;
    bool dup = false;
    for (const CriticalPoint* kpt : kept)
      if (x_distance(p->field, kpt->field) <= delta_dist) dup = true;
    if (!dup) kept.push_back(p);
  }
  report.distinct_nontrivial = static_cast<int>(kept.size());
  report.multiplicity_exhibited = report.distinct_nontrivial >= 2;
  return report;
}

}  // namespace sqrtlap
