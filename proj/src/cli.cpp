#include "sqrtlap/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sqrtlap/error.hpp"

namespace sqrtlap {

namespace {

std::vector<std::string> tokenize(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream in(line);
  while (std::getline(in, tok, sep)) out.push_back(tok);
  return out;
}

}  // namespace

DomainSpec build_domain(const RunConfig& cfg) {
  if (cfg.domain_kind == "rectangle") return DomainSpec::rectangle(cfg.domain_sizes);
  if (cfg.domain_kind == "disk") {
    if (cfg.domain_sizes.size() != 1)
      throw Error(ErrorCode::CONFIG, "domain.sizes must hold exactly the disk radius");
    return DomainSpec::disk(cfg.domain_sizes[0]);
  }
  throw Error(ErrorCode::CONFIG, "domain.kind must be rectangle or disk");
}

BetaField build_beta(const RunConfig& cfg) {
  if (cfg.beta_is_constant) return BetaField::constant_field(cfg.beta_constant);

  std::ifstream in(cfg.beta_grid_file);
  if (!in) throw Error(ErrorCode::CONFIG, "cannot open beta.grid_file: " + cfg.beta_grid_file);
  int nx = 0, ny = 0;
  Point lo(2), hi(2);
  std::vector<Real> values;
  std::string line;
  bool in_values = false;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (in_values) {
      Real v;
      while (ls >> v) values.push_back(v);
      continue;
    }
    std::string key, eq;
    if (!(ls >> key)) continue;
    if (!(ls >> eq) || eq != "=")
      throw Error(ErrorCode::CONFIG, "beta grid file expects key = value lines");
    if (key == "nx") ls >> nx;
    else if (key == "ny") ls >> ny;
    else if (key == "lo") ls >> lo[0] >> lo[1];
    else if (key == "hi") ls >> hi[0] >> hi[1];
    else if (key == "values") {
      Real v;
      while (ls >> v) values.push_back(v);
      in_values = true;
    } else {
      throw Error(ErrorCode::CONFIG, "unknown key in beta grid file: " + key);
    }
  }
  return BetaField::lattice_field(lo, hi, nx, ny, std::move(values));
}

Nonlinearity build_nonlinearity(const RunConfig& cfg) {
  Nonlinearity nl;
  if (cfg.nl_kind == "power") {
    nl = Nonlinearity::power(cfg.nl_scale, cfg.nl_growth);
  } else if (cfg.nl_kind == "bump") {
    nl = Nonlinearity::bump(cfg.nl_m, cfg.nl_zeta);
  } else if (cfg.nl_kind == "truncated_bump") {
    nl = Nonlinearity::truncated_bump(cfg.nl_m, cfg.nl_zeta);
  } else if (cfg.nl_kind == "tabulated") {
    std::ifstream in(cfg.nl_file);
    if (!in) throw Error(ErrorCode::CONFIG, "cannot open nonlinearity.file: " + cfg.nl_file);
    std::vector<Real> ts, fs;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto cols = tokenize(line, ',');
      if (cols.size() != 2) continue;
      try {
        const Real t = std::stod(cols[0]);
        const Real f = std::stod(cols[1]);
        ts.push_back(t);
        fs.push_back(f);
      } catch (const std::exception&) {
        continue;  // header or stray line
      }
    }
    nl = Nonlinearity::tabulated(std::move(ts), std::move(fs), *cfg.nl_a1, *cfg.nl_a2,
                                 *cfg.nl_q);
  } else {
    throw Error(ErrorCode::CONFIG, "unknown nonlinearity.kind: " + cfg.nl_kind);
  }
  if (cfg.nl_a1) nl.a1 = *cfg.nl_a1;
  if (cfg.nl_a2) nl.a2 = *cfg.nl_a2;
  if (cfg.nl_q) nl.q = *cfg.nl_q;
  return nl;
}

Setup prepare_setup(const RunConfig& cfg) {
  Setup s;
  s.config = cfg;
  s.domain = build_domain(cfg);
  s.beta = build_beta(cfg);
  s.nl = build_nonlinearity(cfg);
  const int n = s.domain.dimension();

  Point x0;
  if (cfg.x0) {
    if (static_cast<int>(cfg.x0->size()) != n)
      throw Error(ErrorCode::CONFIG, "variational.x0 dimension mismatch");
    x0.resize(n);
    for (int d = 0; d < n; ++d) x0[d] = (*cfg.x0)[d];
  } else {
    x0 = s.domain.centroid();
  }
  const Real tau = cfg.tau ? *cfg.tau : 0.99 * s.domain.distance_to_boundary(x0);
  validate_ball(s.domain, x0, tau);

  ConstantsBundle& b = s.bundle;
  b.n = n;
  b.tau = tau;
  b.x0 = x0;
  b.omega_n = unit_ball_measure(n);
  const GeometryConstants geo = geometry_constants(n, tau, s.domain.measure());
  b.g = geo.g;
  b.h = geo.h;

  if (s.beta.is_constant) {
    b.beta0 = b.beta_sup = s.beta.constant;
  } else {
    b.beta0 = *std::min_element(s.beta.lattice.begin(), s.beta.lattice.end());
    b.beta_sup = *std::max_element(s.beta.lattice.begin(), s.beta.lattice.end());
  }
  if (!(b.beta0 > 0))
    throw Error(ErrorCode::RANGE, "beta must have positive essential infimum");

  b.a1 = s.nl.a1;
  b.a2 = s.nl.a2;
  b.q = s.nl.q;
  b.c1 = estimate_embedding_constant(s.domain, 1.0, cfg.modes, cfg.restarts, cfg.ascent_steps,
                                     cfg.seed, cfg.quad_order);
  b.cq = estimate_embedding_constant(s.domain, s.nl.q, cfg.modes, cfg.restarts,
                                     cfg.ascent_steps, cfg.seed, cfg.quad_order);
  const KConstants kc = k_constants(n, tau, b.beta0, b.beta_sup, b.c1.estimate, b.cq.estimate,
                                    s.nl.q, b.h);
  b.k1 = kc.k1;
  b.k2 = kc.k2;

  auto F = [&](Real t) { return s.nl.F(t); };
  const bool bump_like = s.nl.kind == Nonlinearity::Kind::Bump ||
                         s.nl.kind == Nonlinearity::Kind::TruncatedBump;
  if (bump_like) {
    b.lstar = lambda_star(n, tau, b.omega_n, b.beta0, b.h, s.nl.zeta, F);
    b.has_lambda_star = true;
  }

  if (cfg.rho) {
    b.rho = *cfg.rho;
  } else {
    if (!b.has_lambda_star)
      throw Error(ErrorCode::CONFIG,
                  "variational.rho = auto needs a bump-type nonlinearity (finite zeta)");
    b.rho = b.lstar.rho_bar;
  }

  if (cfg.lambda) {
    s.lambda = *cfg.lambda;
  } else if (cfg.gamma) {
    const MuInterval trial = mu_interval(n, tau, b.omega_n, b.beta0, b.h, *cfg.gamma, b.rho,
                                         b.a1, b.a2, b.q, b.k1, b.k2, F);
    if (trial.valid) {
      s.lambda = 0.5 * (trial.mu1 + trial.mu2);
    } else if (b.has_lambda_star) {
      s.lambda = 2.0 * b.lstar.value;
    } else {
      throw Error(ErrorCode::CONFIG,
                  "variational.lambda = auto: no valid (mu1, mu2) and no lambda_star");
    }
  } else {
    if (!b.has_lambda_star)
      throw Error(ErrorCode::CONFIG,
                  "variational.lambda = auto needs an explicit gamma or a bump-type "
                  "nonlinearity");
    s.lambda = 2.0 * b.lstar.value;
  }

  if (cfg.gamma) {
    b.gamma = *cfg.gamma;
  } else {
    b.gamma = recommended_gamma(n, tau, b.omega_n, b.beta0, b.g, b.h, b.a2, s.nl.q - 1.0,
                                b.k2, s.lambda, b.rho);
  }

  b.mu = mu_interval(n, tau, b.omega_n, b.beta0, b.h, b.gamma, b.rho, b.a1, b.a2, b.q, b.k1,
                     b.k2, F);
  b.ai = check_AI(b.rho, b.gamma, b.a1, b.a2, b.q, b.k1, b.k2, F);
  b.aii_present = s.nl.has_subquadratic;
  b.tiau2_holds = check_rho_gamma(b.rho, b.gamma, b.g);
  b.indicative = true;
  return s;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NO_CONVERGENCE:
    case ErrorCode::MP_COLLAPSE:
      return 3;
    case ErrorCode::THEOREM_VIOLATION:
    case ErrorCode::CHAIN_VIOLATION:
    case ErrorCode::BOUNDARY_MINIMUM:
    case ErrorCode::INTERNAL_INCONSISTENCY:
      return 4;
    default:
      return 2;
  }
}

namespace {

SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions opts;
  opts.tol_res = cfg.tol_res;
  opts.max_iter = cfg.max_iter;
  opts.seed = cfg.seed;
  return opts;
}

int run_prepared(const std::string& command, const RunConfig& cfg, const std::string& out_dir,
                 std::string& report) {
  namespace fs = std::filesystem;

  if (command == "eigen") {
    const DomainSpec domain = build_domain(cfg);
    const auto pairs = eigenpairs(domain, cfg.modes);
    write_eigen_table((fs::path(out_dir) / "eigenvalues.csv").string(), pairs);
    std::ostringstream res;
    res << "[results]\n";
    res << "modes = " << cfg.modes << "\n";
    res << "lambda_1 = " << fmt17(pairs.front().lambda) << "\n";
    res << "lambda_N = " << fmt17(pairs.back().lambda) << "\n";
    res << "table = eigenvalues.csv\n";
    report += res.str();
    return 0;
  }

  Setup setup = prepare_setup(cfg);
  report += render_constants_section(setup.bundle);
  report += "\n";

  if (command == "constants") {
    report += "[results]\nlambda = " + fmt17(setup.lambda) + "\n";
    return 0;
  }

  ProblemInstance inst = make_instance(setup.domain, setup.beta, setup.nl, setup.lambda,
                                       cfg.modes, cfg.quad_order);

  if (command == "verify") {
    report += "[results]\nlambda = " + fmt17(setup.lambda) + "\n\n";
    const ChainReport chain = verify_competitor_chain(inst, setup.bundle, 200, cfg.seed);
    report += render_chain_section(chain);
    if (!chain.ok) {
      report += render_error_section(ErrorCode::CHAIN_VIOLATION,
                                     "competitor chain failed: " + chain.failing_clause);
      return 4;
    }
    return 0;
  }

  if (command == "solve") {
    const SolveReport res = solve_three(inst, setup.bundle, solver_options(cfg));
    std::vector<std::string> files;
    int idx = 0;
    for (const auto* w : {&res.w1, &res.w2, &res.w3}) {
      ++idx;
      if (!w->has_value()) continue;
      const std::string trace = "solution_" + std::to_string(idx) + "_trace.csv";
      const std::string coeffs = "solution_" + std::to_string(idx) + "_coeffs.csv";
      write_trace_grid((fs::path(out_dir) / trace).string(), w->value().field,
                       cfg.grid_resolution);
      write_coefficients((fs::path(out_dir) / coeffs).string(), w->value().field);
      files.push_back(trace);
      files.push_back(coeffs);
    }
    report += render_solve_sections(res, setup.lambda, files);
    return 0;
  }

  throw Error(ErrorCode::CONFIG, "unknown command: " + command);
}

}  // namespace

int run_command(const std::string& command, RunConfig cfg, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::exists(out_dir)) {
    return exit_code_for(ErrorCode::IO);
  }

  std::string report = serialize_config(cfg) + "\n";
  int code = 0;
  try {
    require_complete(cfg, command);
    code = run_prepared(command, cfg, out_dir, report);
  } catch (const Error& e) {
    report += render_error_section(e.code(), e.what());
    code = exit_code_for(e.code());
  } catch (const std::exception& e) {
    report += render_error_section(ErrorCode::INTERNAL_INCONSISTENCY, e.what());
    code = 4;
  }
  write_text((fs::path(out_dir) / "report.txt").string(), report);
  return code;
}

}  // namespace sqrtlap
