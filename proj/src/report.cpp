#include "sqrtlap/report.hpp"

#include <fstream>
#include <sstream>

#include "sqrtlap/error.hpp"

namespace sqrtlap {

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IO, "cannot write " + path);
  out << content;
}

void write_trace_grid(const std::string& path, const SpectralField& field, int resolution) {
  const DomainSpec& dom = field.basis->domain;
  Point lo, hi;
  dom.bounding_box(lo, hi);

  const int res = resolution;
  PointMatrix pts(static_cast<Index>(res) * res, dom.dimension());
  std::vector<bool> inside(static_cast<size_t>(res) * res);
  Index q = 0;
  for (int iy = 0; iy < res; ++iy) {
    for (int ix = 0; ix < res; ++ix, ++q) {
      Point x(dom.dimension());
      x[0] = lo[0] + (hi[0] - lo[0]) * ix / (res - 1);
      x[1] = lo[1] + (hi[1] - lo[1]) * iy / (res - 1);
      if (dom.dimension() == 3) x[2] = 0.5 * (lo[2] + hi[2]);
      pts.row(q) = x;
      inside[static_cast<size_t>(q)] = dom.contains(x, 1e-12);
    }
  }

  // Evaluate only the in-domain points; one table build covers all of them.
  Index n_in = 0;
  for (bool b : inside) n_in += b;
  PointMatrix pts_in(n_in, dom.dimension());
  Index qi = 0;
  for (Index i = 0; i < pts.rows(); ++i)
    if (inside[static_cast<size_t>(i)]) pts_in.row(qi++) = pts.row(i);
  const Vector values_in = field.eval(pts_in);

  std::ostringstream out;
  out << "x1,x2,u,in_domain\n";
  qi = 0;
  for (Index i = 0; i < pts.rows(); ++i) {
    const bool in = inside[static_cast<size_t>(i)];
    const Real u = in ? values_in[qi++] : 0.0;
    out << fmt17(pts(i, 0)) << "," << fmt17(pts(i, 1)) << "," << fmt17(u) << ","
        << (in ? 1 : 0) << "\n";
  }
  write_text(path, out.str());
}

void write_coefficients(const std::string& path, const SpectralField& field) {
  std::ostringstream out;
  out << "j,a_j\n";
  for (Index j = 0; j < field.coeffs.size(); ++j)
    out << (j + 1) << "," << fmt17(field.coeffs[j]) << "\n";
  write_text(path, out.str());
}

void write_eigen_table(const std::string& path, const std::vector<EigenPair>& pairs) {
  std::ostringstream out;
  out << "j,lambda,mode\n";
  for (const EigenPair& p : pairs)
    out << p.index << "," << fmt17(p.lambda) << "," << p.mode.label(p.domain) << "\n";
  write_text(path, out.str());
}

std::string render_constants_section(const ConstantsBundle& b) {
  std::ostringstream out;
  out << "[constants]\n";
  out << "n = " << b.n << "\n";
  out << "tau = " << fmt17(b.tau) << "\n";
  out << "x0 =";
  for (Index d = 0; d < b.x0.size(); ++d) out << " " << fmt17(b.x0[d]);
  out << "\n";
  out << "omega_n = " << fmt17(b.omega_n) << "\n";
  out << "g = " << fmt17(b.g) << "\n";
  out << "h = " << fmt17(b.h) << "\n";
  out << "beta0 = " << fmt17(b.beta0) << "\n";
  out << "beta_sup = " << fmt17(b.beta_sup) << "\n";
  out << "a1 = " << fmt17(b.a1) << "\n";
  out << "a2 = " << fmt17(b.a2) << "\n";
  out << "q = " << fmt17(b.q) << "\n";
  out << "c1_estimate = " << fmt17(b.c1.estimate) << "\n";
  out << "cq_estimate = " << fmt17(b.cq.estimate) << "\n";
  out << "embedding_modes = " << b.c1.modes << "\n";
  out << "embedding_restarts = " << b.c1.restarts << "\n";
  out << "K1 = " << fmt17(b.k1) << "\n";
  out << "K2 = " << fmt17(b.k2) << "\n";
  out << "gamma = " << fmt17(b.gamma) << "\n";
  out << "rho = " << fmt17(b.rho) << "\n";
  out << "mu1 = " << fmt17(b.mu.mu1) << "\n";
  out << "mu2 = " << fmt17(b.mu.mu2) << "\n";
  out << "mu_valid = " << (b.mu.valid ? "true" : "false") << "\n";
  out << "chi_bound_at_gamma_sq = "
      << fmt17(chi_bound(b.gamma * b.gamma, b.a1, b.a2, b.q, b.c1.estimate, b.cq.estimate,
                         b.beta_sup))
      << "\n";
  out << "one_over_mu2 = " << fmt17(1.0 / b.mu.mu2) << "\n";
  if (b.has_lambda_star) {
    out << "lambda_star = " << fmt17(b.lstar.value) << "\n";
    out << "rho_bar = " << fmt17(b.lstar.rho_bar) << "\n";
  }
  out << "ai_holds = " << (b.ai.holds ? "true" : "false") << "\n";
  out << "ai_margin = " << fmt17(b.ai.margin) << "\n";
  out << "aii_present = " << (b.aii_present ? "true" : "false") << "\n";
  out << "tiau2_holds = " << (b.tiau2_holds ? "true" : "false") << "\n";
  out << "provenance = indicative (embedding constants are subspace estimates)\n";
  return out.str();
}

std::string render_chain_section(const ChainReport& c) {
  std::ostringstream out;
  out << "[chain]\n";
  out << "tiau2 = " << (c.tiau2 ? "true" : "false") << "\n";
  out << "phi_lift = " << fmt17(c.phi_lift) << "\n";
  out << "gamma_sq = " << fmt17(c.gamma_sq) << "\n";
  out << "phigamma_ok = " << (c.phigamma_ok ? "true" : "false") << "\n";
  out << "psi_lift = " << fmt17(c.psi_lift) << "\n";
  out << "psi_lower_bound = " << fmt17(c.psi_lower_bound) << "\n";
  out << "psi_bound_ok = " << (c.psi_bound_ok ? "true" : "false") << "\n";
  out << "lambda_in_interval = " << (c.lambda_in_interval ? "true" : "false") << "\n";
  if (c.phigamma2_skipped) {
    out << "phigamma2 = SKIPPED\n";
  } else {
    out << "j_lift = " << fmt17(c.j_lift) << "\n";
    out << "sup_psi_analytic = " << fmt17(c.sup_psi_analytic) << "\n";
    out << "sup_psi_sampled = " << fmt17(c.sup_psi_sampled) << "\n";
    out << "phigamma2 = " << (c.phigamma2_ok ? "pass" : "fail") << "\n";
  }
  out << "ok = " << (c.ok ? "true" : "false") << "\n";
  if (!c.ok) out << "failing_clause = " << c.failing_clause << "\n";
  return out.str();
}

namespace {

void render_solution(std::ostream& out, int index, const char* role, const CriticalPoint& cp,
                     const std::string& trace_file, const std::string& coeffs_file) {
  out << "[solution." << index << "]\n";
  out << "role = " << role << "\n";
  out << "energy = " << fmt17(cp.energy) << "\n";
  out << "phi = " << fmt17(cp.phi) << "\n";
  out << "residual = " << fmt17(cp.residual) << "\n";
  out << "trace_sup = " << fmt17(cp.trace_sup) << "\n";
  out << "trace_min = " << fmt17(cp.trace_min) << "\n";
  out << "trivial = " << (cp.trivial ? "true" : "false") << "\n";
  if (cp.nonneg_checked)
    out << "nonneg_trace = " << (cp.nonneg_trace ? "true" : "false") << "\n";
  out << "inside_ball = " << (cp.inside_ball ? "true" : "false") << "\n";
  out << "iterations = " << cp.iterations << "\n";
  out << "trace_file = " << trace_file << "\n";
  out << "coeffs_file = " << coeffs_file << "\n";
  out << "\n";
}

}  // namespace

std::string render_solve_sections(const SolveReport& report, Real lambda,
                                  const std::vector<std::string>& solution_files) {
  std::ostringstream out;
  out << "[results]\n";
  out << "lambda = " << fmt17(lambda) << "\n";
  out << "guarantees_active = " << (report.guarantees_active ? "true" : "false") << "\n";
  out << "multiplicity_exhibited = " << (report.multiplicity_exhibited ? "true" : "false")
      << "\n";
  out << "distinct_nontrivial = " << report.distinct_nontrivial << "\n";
  out << "trivial_count = " << report.trivial_count << "\n";
  out << "dist_12 = " << fmt17(report.dist_12) << "\n";
  out << "dist_13 = " << fmt17(report.dist_13) << "\n";
  out << "dist_23 = " << fmt17(report.dist_23) << "\n";
  int mi = 0;
  for (const std::string& msg : report.messages)
    out << "message." << ++mi << " = " << msg << "\n";
  out << "\n";

  const char* roles[3] = {"ball_minimum", "global_minimum", "mountain_pass"};
  int idx = 0;
  int file_at = 0;
  for (const auto* w : {&report.w1, &report.w2, &report.w3}) {
    ++idx;
    if (!w->has_value()) continue;
    const std::string trace_file =
        file_at * 2 < static_cast<int>(solution_files.size()) ? solution_files[file_at * 2] : "";
    const std::string coeffs_file = file_at * 2 + 1 < static_cast<int>(solution_files.size())
                                        ? solution_files[file_at * 2 + 1]
                                        : "";
    render_solution(out, idx, roles[idx - 1], w->value(), trace_file, coeffs_file);
    ++file_at;
  }
  return out.str();
}

std::string render_error_section(ErrorCode code, const std::string& message) {
  std::ostringstream out;
  out << "[errors]\n";
  out << "code = " << to_string(code) << "\n";
  out << "message = " << message << "\n";
  return out.str();
}

}  // namespace sqrtlap
