#pragma once

#include <cstdint>
#include <functional>

#include "sqrtlap/quadrature.hpp"
#include "sqrtlap/spectral_basis.hpp"

namespace sqrtlap {

/// An element of H_0^{1/2}(Omega) as coefficients on the Dirichlet eigenbasis.
struct SpectralField {
  BasisPtr basis;
  Vector coeffs;

  SpectralField() = default;
  SpectralField(BasisPtr b, Vector a) : basis(std::move(b)), coeffs(std::move(a)) {}

  static SpectralField zero(BasisPtr b) {
    Vector a = Vector::Zero(b->size());
    return SpectralField(std::move(b), std::move(a));
  }

  Index size() const { return coeffs.size(); }

  /// Pointwise values sum_j a_j phi_j(x).
  Vector eval(const PointMatrix& points) const;
};

/// (sum_j a_j^2 lambda_j^{1/2})^{1/2}.
Real h_half_norm(const SpectralField& u);

/// X-inner product of two fields on the same basis.
Real h_half_inner(const SpectralField& u, const SpectralField& v);

/// Coefficient-wise a_j -> a_j lambda_j^{1/2}.
SpectralField apply_sqrt_laplacian(const SpectralField& u);

/// Quadrature approximation of the L^p(Omega) norm of the trace,
/// 1 <= p <= 2n/(n-1).
Real lp_trace_norm(const SpectralField& u, Real p, int quad_order = 64);

/// L2 projection of a pointwise function onto the first N basis modes.
SpectralField project_onto_basis(const BasisPtr& basis,
                                 const std::function<Real(const Point&)>& f,
                                 int quad_order = 64);

/// Gaussian random coefficients scaled to the requested X-norm.
SpectralField random_field(const BasisPtr& basis, std::uint64_t seed, Real x_norm = 1.0);

/// Subspace lower bound on the trace-embedding constant c_p of
/// ||Tr w||_{L^p} <= c_p ||w||: the maximal Rayleigh ratio over the N-mode
/// subspace found by projected ascent from `restarts` seeded starts.
struct EmbeddingConstants {
  Real p = 0;
  Real estimate = 0;      // lower bound on the best constant
  Real critical_exponent = 0;
  int modes = 0;
  int restarts = 0;
  int ascent_steps = 0;
  bool certified = false;  // always false: subspace estimates are indicative
};

EmbeddingConstants estimate_embedding_constant(const DomainSpec& domain, Real p, int modes,
                                               int restarts = 32, int ascent_steps = 200,
                                               std::uint64_t seed = 12345, int quad_order = 64);

}  // namespace sqrtlap
