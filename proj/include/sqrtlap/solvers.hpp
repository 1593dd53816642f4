#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqrtlap/cones.hpp"
#include "sqrtlap/energy.hpp"

namespace sqrtlap {

struct SolverOptions {
  Real tol_res = 1e-8;          // residual below which a point counts as critical
  int max_iter = 100000;        // per-stage iteration cap
  std::uint64_t seed = 12345;
  int path_nodes = 40;          // mountain-pass discretization
  Real armijo_c1 = 1e-4;
  Real armijo_backtrack = 0.5;
};

struct CriticalPoint {
  SpectralField field;
  Real energy = 0;
  Real phi = 0;
  Real residual = 0;
  Real trace_sup = 0;   // empirical, over the quadrature grid
  Real trace_min = 0;
  bool trivial = false;
  bool nonneg_trace = false;
  bool nonneg_checked = false;
  bool inside_ball = false;
  int iterations = 0;
};

/// Projected-gradient (with Newton refinement) minimizer of J over the
/// closed ball Phi <= gamma^2; iterates leaving the open ball are rescaled
/// to X-norm (1 - 1e-9) sqrt(2) gamma. Throws BOUNDARY_MINIMUM when the
/// minimizer pins to the boundary and NO_CONVERGENCE at the iteration cap.
CriticalPoint minimize_in_ball(const ProblemInstance& inst, Real gamma,
                               const SpectralField& init, const SolverOptions& opts = {},
                               std::vector<std::string>* warnings = nullptr);

/// Best-of-restarts unconstrained minimization: the projected cone
/// competitor, random fields at radii {1/2, 1, 2, 4} sqrt(2) gamma, and 0.
/// When the bundle certifies lambda in (mu1, mu2) with the algebraic
/// hypothesis, asserts Phi(result) > gamma^2 (THEOREM_VIOLATION otherwise).
CriticalPoint global_minimize(const ProblemInstance& inst, Real gamma,
                              const ConstantsBundle* bundle, const SolverOptions& opts = {},
                              std::vector<std::string>* warnings = nullptr);

/// Discrete mountain pass between two certified local minima: descend the
/// J-maximal node of a redistributed path, then Newton-polish the saddle.
CriticalPoint mountain_pass(const ProblemInstance& inst, const CriticalPoint& w1,
                            const CriticalPoint& w2, const SolverOptions& opts = {});

struct SolveReport {
  std::optional<CriticalPoint> w1, w2, w3;
  Real dist_12 = 0, dist_13 = 0, dist_23 = 0;
  int trivial_count = 0;
  int distinct_nontrivial = 0;
  bool guarantees_active = false;  // lambda in a valid (mu1, mu2)
  bool multiplicity_exhibited = false;
  ConstantsBundle bundle;
  std::vector<std::string> messages;
};

/// The three stages in sequence with classification: trivial flags, trace
/// nonnegativity for one-sided nonlinearities, gamma-ball position, and
/// pairwise distances.
SolveReport solve_three(const ProblemInstance& inst, const ConstantsBundle& bundle,
                        const SolverOptions& opts = {});

/// X-distance between two fields on the same basis.
Real x_distance(const SpectralField& a, const SpectralField& b);

}  // namespace sqrtlap
