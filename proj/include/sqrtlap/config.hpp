#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqrtlap/types.hpp"

namespace sqrtlap {

/// One run configuration, mirroring the sectioned `key = value` file
/// grammar. Optional variational fields left empty mean "auto".
struct RunConfig {
  // [domain]
  std::string domain_kind;          // rectangle | disk
  std::vector<Real> domain_sizes;   // side lengths, or the single radius

  // [beta]
  bool beta_is_constant = true;
  Real beta_constant = 1.0;
  std::string beta_grid_file;

  // [nonlinearity]
  std::string nl_kind;              // power | bump | truncated_bump | tabulated
  Real nl_scale = 1.0;
  Real nl_growth = 3.0;
  Real nl_m = 2.0;
  Real nl_zeta = 1.0;
  std::string nl_file;
  std::optional<Real> nl_a1, nl_a2, nl_q;

  // [variational]
  std::optional<Real> tau;
  std::optional<std::vector<Real>> x0;
  std::optional<Real> gamma;
  std::optional<Real> rho;
  std::optional<Real> lambda;

  // [solver]
  int modes = 64;
  int quad_order = 64;
  Real tol_res = 1e-8;
  std::uint64_t seed = 12345;
  int restarts = 32;
  int max_iter = 100000;
  int ascent_steps = 200;

  // [output]
  std::string out_dir = "out";
  int grid_resolution = 201;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the sectioned text. Unknown keys inside config sections are
/// rejected; report-only sections (results, constants, chain, solution.*,
/// errors, eigenvalues) are skipped, so a report's config echo re-parses.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Canonical serialization: fixed section and key order, 17 significant
/// digits, "auto" for unresolved variational fields.
std::string serialize_config(const RunConfig& config);

/// Command-specific completeness check (throws CONFIG naming the key).
void require_complete(const RunConfig& config, const std::string& command);

/// 17-significant-digit formatting used by every writer.
std::string fmt17(Real value);

}  // namespace sqrtlap
