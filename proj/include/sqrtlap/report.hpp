#pragma once

#include <string>

#include "sqrtlap/cones.hpp"
#include "sqrtlap/config.hpp"
#include "sqrtlap/error.hpp"
#include "sqrtlap/solvers.hpp"

namespace sqrtlap {

/// Trace values on a uniform grid over the bounding box (3-D rectangles are
/// sliced at the x3 midplane). Header x1,x2,u,in_domain; points outside the
/// closure carry u = 0 and flag 0; row-major, 17 significant digits.
void write_trace_grid(const std::string& path, const SpectralField& field, int resolution);

/// Coefficient table, header j,a_j.
void write_coefficients(const std::string& path, const SpectralField& field);

/// Eigenvalue table, header j,lambda,mode (mode components space-separated).
void write_eigen_table(const std::string& path, const std::vector<EigenPair>& pairs);

/// Flat key = value report sections in the config grammar.
std::string render_constants_section(const ConstantsBundle& bundle);
std::string render_chain_section(const ChainReport& chain);
std::string render_solve_sections(const SolveReport& report, Real lambda,
                                  const std::vector<std::string>& solution_files);
std::string render_error_section(ErrorCode code, const std::string& message);

void write_text(const std::string& path, const std::string& content);

}  // namespace sqrtlap
