#include "sqrtlap/extension.hpp"

#include <cmath>

#include "sqrtlap/error.hpp"
#include "sqrtlap/quadrature.hpp"

namespace sqrtlap {

YProfile YProfile::exponential(Real rate) {
  YProfile prof;
  prof.kind = Kind::Exponential;
  prof.rate = rate;
  return prof;
}

YProfile YProfile::generic(std::function<Real(Real)> p, std::function<Real(Real)> dp,
                           Real y_cut) {
  YProfile prof;
  prof.kind = Kind::Generic;
  prof.p = std::move(p);
  prof.dp = std::move(dp);
  prof.y_cut = y_cut;
  return prof;
}

Real YProfile::value_at_zero() const {
  return kind == Kind::Exponential ? 1.0 : p(0.0);
}

Real YProfile::slope_at_zero() const {
  return kind == Kind::Exponential ? -rate : dp(0.0);
}

Real YProfile::int_p_squared() const {
  if (kind == Kind::Exponential) {
    if (!(rate > 0)) throw Error(ErrorCode::DIVERGENT, "profile does not decay");
    return 0.5 / rate;
  }
  return adaptive_simpson([this](Real y) { const Real v = p(y); return v * v; }, 0.0, y_cut,
                          1e-12);
}

Real YProfile::int_dp_squared() const {
  if (kind == Kind::Exponential) {
    if (!(rate > 0)) throw Error(ErrorCode::DIVERGENT, "profile does not decay");
    return 0.5 * rate;
  }
  return adaptive_simpson([this](Real y) { const Real v = dp(y); return v * v; }, 0.0, y_cut,
                          1e-12);
}

CylinderField CylinderField::harmonic(BasisPtr basis, Vector amplitudes) {
  CylinderField w;
  w.tag = Tag::Harmonic;
  w.basis = std::move(basis);
  w.amplitudes = std::move(amplitudes);
  return w;
}

CylinderField CylinderField::product(BasisPtr basis, YProfile profile, TraceFactor factor) {
  CylinderField w;
  w.tag = Tag::Product;
  w.basis = std::move(basis);
  w.profile = std::move(profile);
  w.factor = std::move(factor);
  return w;
}

Real CylinderField::eval(const Point& x, Real y) const {
  if (tag == Tag::Product) {
    const Real p = profile.kind == YProfile::Kind::Exponential ? std::exp(-profile.rate * y)
                                                               : profile.p(y);
    return p * factor.eval(x);
  }
  PointMatrix pts(1, x.size());
  pts.row(0) = x;
  Real v = 0;
  for (Index j = 0; j < basis->size(); ++j) {
    if (amplitudes[j] == 0) continue;
    v += amplitudes[j] * std::exp(-basis->sqrt_lambdas[j] * y) *
         eval_eigenfunction(basis->pairs[j], pts)[0];
  }
  return v;
}

CylinderField extend(const SpectralField& u) {
  return CylinderField::harmonic(u.basis, u.coeffs);
}

Real cylinder_energy(const CylinderField& w) {
  if (w.tag == CylinderField::Tag::Harmonic) {
    // Per mode: int_0^inf (lambda_j + lambda_j) b_j^2 e^{-2 sqrt(lambda_j) y} dy
    //         = b_j^2 sqrt(lambda_j).
    return (w.amplitudes.array().square() * w.basis->sqrt_lambdas.array()).sum();
  }
  return w.profile.int_p_squared() * w.factor.grad_l2_squared +
         w.profile.int_dp_squared() * w.factor.l2_squared;
}

SpectralField trace(const CylinderField& w, int quad_order) {
  if (w.tag == CylinderField::Tag::Harmonic) return SpectralField(w.basis, w.amplitudes);
  SpectralField proj = project_onto_basis(w.basis, w.factor.eval, quad_order);
  proj.coeffs *= w.profile.value_at_zero();
  return proj;
}

SpectralField neumann_trace(const CylinderField& w, int quad_order) {
  if (w.tag == CylinderField::Tag::Harmonic) {
    Vector b = (w.amplitudes.array() * w.basis->sqrt_lambdas.array()).matrix();
    return SpectralField(w.basis, std::move(b));
  }
  SpectralField proj = project_onto_basis(w.basis, w.factor.eval, quad_order);
  proj.coeffs *= -w.profile.slope_at_zero();
  return proj;
}

Real default_cylinder_window(const Basis& basis) {
  return 6.0 / basis.sqrt_lambdas[0];
}

}  // namespace sqrtlap
