#pragma once

#include <optional>
#include <string>

#include "sqrtlap/config.hpp"
#include "sqrtlap/report.hpp"

namespace sqrtlap {

DomainSpec build_domain(const RunConfig& config);
BetaField build_beta(const RunConfig& config);
Nonlinearity build_nonlinearity(const RunConfig& config);

/// Fully resolved problem data: auto fields replaced by their defaults
/// (x0 = centroid, tau = 0.99 dist(x0, boundary), rho = rho_bar, lambda =
/// interval midpoint or 2 lambda_star, gamma = 0.99 of the two-branch
/// minimum) and the constants bundle assembled.
struct Setup {
  RunConfig config;
  DomainSpec domain;
  BetaField beta;
  Nonlinearity nl;
  Real lambda = 0;
  ConstantsBundle bundle;
};

Setup prepare_setup(const RunConfig& config);

/// Executes one CLI command (eigen | constants | verify | solve) and writes
/// its outputs into out_dir. Returns the process exit code: 0 success,
/// 2 config/data error, 3 non-convergence, 4 violated certified assertion.
int run_command(const std::string& command, RunConfig config, const std::string& out_dir);

int exit_code_for(ErrorCode code);

}  // namespace sqrtlap
