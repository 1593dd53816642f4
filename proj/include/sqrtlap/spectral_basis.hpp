#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "sqrtlap/domain.hpp"
#include "sqrtlap/types.hpp"

namespace sqrtlap {

/// Mode descriptor for one Dirichlet eigenfunction. Rectangles use an
/// integer multi-index; the disk uses angular order m, radial index k and
/// a cos/sin parity (m >= 1 eigenvalues are double).
struct Mode {
  enum class Parity { Cos, Sin };

  std::array<int, 3> rect{0, 0, 0};
  int angular = 0;
  int radial = 0;
  Parity parity = Parity::Cos;

  std::string label(const DomainSpec& domain) const;
};

struct EigenPair {
  int index = 0;  // 1-based position in the ascending spectrum
  Real lambda = 0;
  Mode mode;
  Real bessel_root = 0;  // disk only: j_{m,k}
  Real norm_const = 0;   // L2 normalization factor
  DomainSpec domain;
};

/// First N Dirichlet eigenpairs of -Delta on the domain, eigenvalues
/// ascending, ties broken lexicographically by mode descriptor, and
/// eigenfunctions L2-normalized.
std::vector<EigenPair> eigenpairs(const DomainSpec& domain, int count);

/// Values of the normalized eigenfunction at points inside the closed domain.
Vector eval_eigenfunction(const EigenPair& pair, const PointMatrix& points);

/// Cartesian gradient of the eigenfunction, one row per point.
PointMatrix eval_eigenfunction_gradient(const EigenPair& pair, const PointMatrix& points);

/// A fixed Galerkin basis: domain plus its first N eigenpairs.
struct Basis {
  DomainSpec domain;
  std::vector<EigenPair> pairs;
  Vector lambdas;       // N
  Vector sqrt_lambdas;  // N

  Index size() const { return lambdas.size(); }
  int max_angular_mode() const;

  /// Mode-by-node evaluation table, N x Q.
  Matrix eval_table(const PointMatrix& points) const;
};

using BasisPtr = std::shared_ptr<const Basis>;

BasisPtr make_basis(const DomainSpec& domain, int count);

}  // namespace sqrtlap
