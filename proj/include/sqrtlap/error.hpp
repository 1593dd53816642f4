#pragma once

#include <stdexcept>
#include <string>

namespace sqrtlap {

// Machine-readable failure codes; they end up in reports and drive CLI exit codes.
enum class ErrorCode {
  UNSUPPORTED_DOMAIN,
  OUT_OF_DOMAIN,
  RANGE,
  CRITICAL_EXPONENT,
  GROWTH_RANGE,
  POTENTIAL_NONPOSITIVE,
  NO_ADMISSIBLE_RHO,
  DIVERGENT,
  INTERNAL_INCONSISTENCY,
  CHAIN_VIOLATION,
  NO_CONVERGENCE,
  BOUNDARY_MINIMUM,
  MP_COLLAPSE,
  THEOREM_VIOLATION,
  CONFIG,
  IO,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UNSUPPORTED_DOMAIN: return "UNSUPPORTED_DOMAIN";
    case ErrorCode::OUT_OF_DOMAIN: return "OUT_OF_DOMAIN";
    case ErrorCode::RANGE: return "RANGE";
    case ErrorCode::CRITICAL_EXPONENT: return "CRITICAL_EXPONENT";
    case ErrorCode::GROWTH_RANGE: return "GROWTH_RANGE";
    case ErrorCode::POTENTIAL_NONPOSITIVE: return "POTENTIAL_NONPOSITIVE";
    case ErrorCode::NO_ADMISSIBLE_RHO: return "NO_ADMISSIBLE_RHO";
    case ErrorCode::DIVERGENT: return "DIVERGENT";
    case ErrorCode::INTERNAL_INCONSISTENCY: return "INTERNAL_INCONSISTENCY";
    case ErrorCode::CHAIN_VIOLATION: return "CHAIN_VIOLATION";
    case ErrorCode::NO_CONVERGENCE: return "NO_CONVERGENCE";
    case ErrorCode::BOUNDARY_MINIMUM: return "BOUNDARY_MINIMUM";
    case ErrorCode::MP_COLLAPSE: return "MP_COLLAPSE";
    case ErrorCode::THEOREM_VIOLATION: return "THEOREM_VIOLATION";
    case ErrorCode::CONFIG: return "CONFIG";
    case ErrorCode::IO: return "IO";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sqrtlap
