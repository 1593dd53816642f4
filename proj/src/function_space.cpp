#include "sqrtlap/function_space.hpp"

#include <cmath>
#include <random>

#include "sqrtlap/error.hpp"

namespace sqrtlap {

Vector SpectralField::eval(const PointMatrix& points) const {
  return basis->eval_table(points).transpose() * coeffs;
}

Real h_half_norm(const SpectralField& u) {
  return std::sqrt(u.coeffs.array().square().matrix().dot(u.basis->sqrt_lambdas));
}

Real h_half_inner(const SpectralField& u, const SpectralField& v) {
  return (u.coeffs.array() * v.coeffs.array() * u.basis->sqrt_lambdas.array()).sum();
}

SpectralField apply_sqrt_laplacian(const SpectralField& u) {
  SpectralField out = u;
  out.coeffs = (u.coeffs.array() * u.basis->sqrt_lambdas.array()).matrix();
  return out;
}

Real lp_trace_norm(const SpectralField& u, Real p, int quad_order) {
  const Real pcrit = u.basis->domain.critical_exponent();
  if (p < 1.0 || p > pcrit)
    throw Error(ErrorCode::RANGE, "trace norm exponent must lie in [1, 2n/(n-1)]");
  QuadratureGrid grid =
      build_quadrature(u.basis->domain, quad_order, u.basis->max_angular_mode());
  const Vector values = u.eval(grid.points);
  const Real s = (values.array().abs().pow(p) * grid.weights.array()).sum();
  return std::pow(s, 1.0 / p);
}

SpectralField project_onto_basis(const BasisPtr& basis,
                                 const std::function<Real(const Point&)>& f, int quad_order) {
  QuadratureGrid grid = build_quadrature(basis->domain, quad_order, basis->max_angular_mode());
  Vector fv(grid.size());
  for (Index q = 0; q < grid.size(); ++q) fv[q] = f(grid.points.row(q));
  Vector a = basis->eval_table(grid.points) * (fv.array() * grid.weights.array()).matrix();
  return SpectralField(basis, std::move(a));
}

SpectralField random_field(const BasisPtr& basis, std::uint64_t seed, Real x_norm) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<Real> gauss(0.0, 1.0);
  Vector a(basis->size());
  for (Index j = 0; j < a.size(); ++j) a[j] = gauss(rng);
  SpectralField u(basis, std::move(a));
  const Real norm = h_half_norm(u);
  if (norm > 0) u.coeffs *= x_norm / norm;
  return u;
}

EmbeddingConstants estimate_embedding_constant(const DomainSpec& domain, Real p, int modes,
                                               int restarts, int ascent_steps,
                                               std::uint64_t seed, int quad_order) {
  const Real pcrit = domain.critical_exponent();
  if (p == pcrit)
    throw Error(ErrorCode::CRITICAL_EXPONENT,
                "the trace embedding is not compact at p = 2n/(n-1)");
  if (p < 1.0 || p > pcrit)
    throw Error(ErrorCode::RANGE, "embedding exponent must lie in [1, 2n/(n-1))");
  if (modes < 1) throw Error(ErrorCode::RANGE, "embedding estimate needs at least one mode");

  BasisPtr basis = make_basis(domain, modes);
  QuadratureGrid grid = build_quadrature(domain, quad_order, basis->max_angular_mode());
  const Matrix table = basis->eval_table(grid.points);  // N x Q
  const Array w = grid.weights.array();
  const Array sqrt_lam = basis->sqrt_lambdas.array();

  auto x_normalize = [&](Vector& a) {
    const Real nrm = std::sqrt((a.array().square() * sqrt_lam).sum());
    a /= nrm;
  };
  auto lp_value = [&](const Vector& a) {
    const Array u = (table.transpose() * a).array();
    return std::pow((u.abs().pow(p) * w).sum(), 1.0 / p);
  };
  // Ascent direction on the X-sphere: the X-Riesz representer of the
  // L^p-norm derivative, projected onto the tangent space (the maximizer is
  // a fixed point of the update).
  auto ascent_direction = [&](const Vector& a, Real value) {
    const Array u = (table.transpose() * a).array();
    const Array g = u.abs().pow(p - 1.0) * u.sign() * w;
    Vector rep = std::pow(value, 1.0 - p) * (table * g.matrix());
    rep = (rep.array() / sqrt_lam).matrix();
    const Real radial = (rep.array() * a.array() * sqrt_lam).sum();
    return Vector(rep - radial * a);
  };

  Real best = 0;
  for (int r = 0; r < restarts; ++r) {
    Vector a;
    if (r == 0) {
      a = Vector::Zero(modes);
      a[0] = 1;  // the p = 2 maximizer; a strong deterministic baseline
    } else {
      std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r));
      std::normal_distribution<Real> gauss(0.0, 1.0);
      a.resize(modes);
      for (Index j = 0; j < a.size(); ++j) a[j] = gauss(rng);
    }
    x_normalize(a);
    Real value = lp_value(a);
    Real step = 1.0;
    for (int it = 0; it < ascent_steps; ++it) {
      Vector trial = a + step * ascent_direction(a, value);
      x_normalize(trial);
      const Real tv = lp_value(trial);
      if (tv > value) {
        a = trial;
        value = tv;
        step = std::min(step * 1.5, 1e3);
      } else {
        step *= 0.5;  // halve on non-improvement
        if (step < 1e-14) break;
      }
    }
    best = std::max(best, value);
  }

  EmbeddingConstants out;
  out.p = p;
  out.estimate = best;
  out.critical_exponent = pcrit;
  out.modes = modes;
  out.restarts = restarts;
  out.ascent_steps = ascent_steps;
  out.certified = false;
  return out;
}

}  // namespace sqrtlap
