#include "oracles.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <random>
#include <stdexcept>

namespace oracle {

Real bessel_series(int m, Real x) {
  const Real half = 0.5 * x;
  Real term = 1.0;
  for (int s = 1; s <= m; ++s) term *= half / s;
  Real sum = term;
  for (int s = 1; s < 300; ++s) {
    term *= -half * half / (static_cast<Real>(s) * (m + s));
    sum += term;
    if (std::abs(term) < 1e-20) break;
  }
  return sum;
}

Real bessel_zero_bisect(int m, int k) {
  int found = 0;
  Real a = std::max<Real>(0.1, m * 0.5);
  Real fa = bessel_series(m, a);
  for (int step = 0; step < 400; ++step) {
    const Real b = a + 0.25;
    const Real fb = bessel_series(m, b);
    if ((fa < 0) != (fb < 0)) {
      ++found;
      if (found == k) {
        Real lo = a, hi = b, flo = fa;
        for (int it = 0; it < 100; ++it) {
          const Real mid = 0.5 * (lo + hi);
          const Real fm = bessel_series(m, mid);
          if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        return 0.5 * (lo + hi);
      }
    }
    a = b;
    fa = fb;
  }
  throw std::runtime_error("bessel_zero_bisect: zero not found in range");
}

std::vector<Real> fd_rectangle_eigenvalues(Real L1, Real L2, int grid, int count) {
  const int mx = grid - 1, my = grid - 1;  // interior points per side
  const Real hx = L1 / grid, hy = L2 / grid;
  const int n = mx * my;
  auto id = [&](int i, int j) { return j * mx + i; };

  Eigen::SparseMatrix<Real> A(n, n);
  std::vector<Eigen::Triplet<Real>> trip;
  trip.reserve(static_cast<size_t>(5) * n);
  const Real dx = 1.0 / (hx * hx), dy = 1.0 / (hy * hy);
  for (int j = 0; j < my; ++j) {
    for (int i = 0; i < mx; ++i) {
      trip.emplace_back(id(i, j), id(i, j), 2 * dx + 2 * dy);
      if (i > 0) trip.emplace_back(id(i, j), id(i - 1, j), -dx);
      if (i < mx - 1) trip.emplace_back(id(i, j), id(i + 1, j), -dx);
      if (j > 0) trip.emplace_back(id(i, j), id(i, j - 1), -dy);
      if (j < my - 1) trip.emplace_back(id(i, j), id(i, j + 1), -dy);
    }
  }
  A.setFromTriplets(trip.begin(), trip.end());

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<Real>> solver(A);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("fd_rectangle_eigenvalues: factorization failed");

  const int p = count + 10;
  Eigen::MatrixXd X(n, p);
  std::mt19937_64 rng(424242);
  std::normal_distribution<Real> gauss(0, 1);
  for (int c = 0; c < p; ++c)
    for (int r = 0; r < n; ++r) X(r, c) = gauss(rng);

  Eigen::VectorXd prev = Eigen::VectorXd::Zero(p);
  for (int it = 0; it < 300; ++it) {
    Eigen::MatrixXd Y = solver.solve(X);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
    Eigen::MatrixXd B = Q.transpose() * (A * Q);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
    X = Q * es.eigenvectors();
    const Eigen::VectorXd vals = es.eigenvalues();
    if (it > 5 && (vals.head(count) - prev.head(count)).cwiseAbs().maxCoeff() <
                      1e-11 * vals[count - 1]) {
      prev = vals;
      break;
    }
    prev = vals;
  }
  std::vector<Real> out(prev.data(), prev.data() + count);
  return out;
}

std::vector<Real> fd_rectangle_eigenvalues_extrapolated(Real L1, Real L2, int grid,
                                                        int count) {
  const std::vector<Real> coarse = fd_rectangle_eigenvalues(L1, L2, grid, count);
  const std::vector<Real> fine = fd_rectangle_eigenvalues(L1, L2, 2 * grid, count);
  std::vector<Real> out(count);
  for (int i = 0; i < count; ++i) out[i] = (4 * fine[i] - coarse[i]) / 3;  // O(h^4)
  return out;
}

Real simpson(const std::function<Real(Real)>& f, Real a, Real b, int n) {
  if (n % 2) ++n;
  const Real h = (b - a) / n;
  Real s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3;
}

Real gamma_one_plus_half(int n) {
  // Gamma(1 + n/2): factorial for even n, half-integer product for odd n.
  if (n % 2 == 0) {
    Real v = 1;
    for (int k = 2; k <= n / 2; ++k) v *= k;
    return v;
  }
  Real v = std::sqrt(sqrtlap::pi());
  for (Real x = 0.5; x <= 0.5 * n + 0.25; x += 1.0) v *= x;
  return v;
}

}  // namespace oracle
