#include "sqrtlap/spectral_basis.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "sqrtlap/bessel.hpp"
#include "sqrtlap/error.hpp"

namespace sqrtlap {

namespace {

constexpr int kMaxBesselOrder = 32;
constexpr int kMaxBesselIndex = 64;

std::vector<EigenPair> rectangle_pairs(const DomainSpec& domain, int count) {
  const int n = domain.dimension();
  // k_d <= cap per axis gives far more than `count` candidates for any
  // reasonable request; grow the cap until the spectrum is safely covered.
  int cap = 2;
  while (true) {
    std::vector<std::array<int, 3>> idx;
    std::array<int, 3> k{1, 1, 1};
    const int k3max = (n == 3) ? cap : 1;
    for (k[0] = 1; k[0] <= cap; ++k[0])
      for (k[1] = 1; k[1] <= cap; ++k[1])
        for (k[2] = 1; k[2] <= k3max; ++k[2]) idx.push_back(k);

    auto lambda_of = [&](const std::array<int, 3>& m) {
      Real s = 0;
      for (int d = 0; d < n; ++d) {
        const Real w = m[d] * pi() / domain.sides[d];
        s += w * w;
      }
      return s;
    };
    std::sort(idx.begin(), idx.end(), [&](const auto& a, const auto& b) {
      const Real la = lambda_of(a), lb = lambda_of(b);
      if (la != lb) return la < lb;
      return a < b;  // deterministic tie-break: lexicographic multi-index
    });

    // The tensor cap truncates the spectrum; accept only if the count-th
    // eigenvalue is below what any clipped mode could contribute.
    Real min_clipped = std::numeric_limits<Real>::max();
    for (int d = 0; d < n; ++d) {
      const Real w = (cap + 1) * pi() / domain.sides[d];
      Real s = w * w;
      for (int e = 0; e < n; ++e)
        if (e != d) {
          const Real we = pi() / domain.sides[e];
          s += we * we;
        }
      min_clipped = std::min(min_clipped, s);
    }
    if (static_cast<int>(idx.size()) >= count && lambda_of(idx[count - 1]) < min_clipped) {
      std::vector<EigenPair> pairs(count);
      Real norm = 1;
      for (int d = 0; d < n; ++d) norm *= std::sqrt(2.0 / domain.sides[d]);
      for (int j = 0; j < count; ++j) {
        pairs[j].index = j + 1;
        pairs[j].lambda = lambda_of(idx[j]);
        pairs[j].mode.rect = idx[j];
        pairs[j].norm_const = norm;
        pairs[j].domain = domain;
      }
      return pairs;
    }
    cap *= 2;
  }
}

std::vector<EigenPair> disk_pairs(const DomainSpec& domain, int count) {
  struct Cand {
    Real root;
    int m, k;
  };
  std::vector<Cand> cands;

  // Weighted candidate count (m >= 1 roots carry cos and sin modes).
  auto weighted = [&]() {
    int c = 0;
    for (const auto& cd : cands) c += cd.m == 0 ? 1 : 2;
    return c;
  };
  // Largest root that could still matter: the N-th smallest weighted root.
  auto cutoff = [&](int need) {
    std::vector<Real> zs;
    zs.reserve(cands.size() * 2);
    for (const auto& cd : cands) {
      zs.push_back(cd.root);
      if (cd.m > 0) zs.push_back(cd.root);
    }
    if (static_cast<int>(zs.size()) < need) return std::numeric_limits<Real>::max();
    std::nth_element(zs.begin(), zs.begin() + need - 1, zs.end());
    return zs[need - 1];
  };

  for (int m = 0; m <= kMaxBesselOrder; ++m) {
    const Real z1 = bessel_j_zero(m, 1);
    if (weighted() >= count && z1 > cutoff(count)) break;
    for (int k = 1; k <= kMaxBesselIndex; ++k) {
      const Real z = (k == 1) ? z1 : bessel_j_zero(m, k);
      if (weighted() >= count && z > cutoff(count)) break;
      cands.push_back({z, m, k});
    }
  }
  if (weighted() < count)
    throw Error(ErrorCode::RANGE, "requested mode count exceeds the supported disk spectrum");

  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.root != b.root) return a.root < b.root;
    if (a.m != b.m) return a.m < b.m;
    return a.k < b.k;
  });

  const Real R = domain.radius;
  std::vector<EigenPair> pairs;
  pairs.reserve(count);
  for (const auto& cd : cands) {
    if (static_cast<int>(pairs.size()) >= count) break;
    const Real lambda = (cd.root / R) * (cd.root / R);
    const Real jnext = std::abs(bessel_j(cd.m + 1, cd.root));
    const int copies = cd.m == 0 ? 1 : 2;
    for (int p = 0; p < copies && static_cast<int>(pairs.size()) < count; ++p) {
      EigenPair e;
      e.index = static_cast<int>(pairs.size()) + 1;
      e.lambda = lambda;
      e.mode.angular = cd.m;
      e.mode.radial = cd.k;
      e.mode.parity = p == 0 ? Mode::Parity::Cos : Mode::Parity::Sin;
      e.bessel_root = cd.root;
      // L2 normalization: int_0^R J_m(z r/R)^2 r dr = R^2 J_{m+1}(z)^2 / 2.
      e.norm_const = (cd.m == 0 ? 1.0 : std::sqrt(2.0)) / (std::sqrt(pi()) * R * jnext);
      e.domain = domain;
      pairs.push_back(e);
    }
  }
  return pairs;
}

}  // namespace

std::string Mode::label(const DomainSpec& domain) const {
  if (domain.kind == DomainSpec::Kind::Rectangle) {
    std::string s = std::to_string(rect[0]) + " " + std::to_string(rect[1]);
    if (domain.dimension() == 3) s += " " + std::to_string(rect[2]);
    return s;
  }
  return std::to_string(angular) + " " + std::to_string(radial) + " " +
         (parity == Parity::Cos ? "cos" : "sin");
}

std::vector<EigenPair> eigenpairs(const DomainSpec& domain, int count) {
  if (count < 1) throw Error(ErrorCode::RANGE, "eigenpair count must be >= 1");
  if (domain.kind == DomainSpec::Kind::Rectangle) return rectangle_pairs(domain, count);
  return disk_pairs(domain, count);
}

Vector eval_eigenfunction(const EigenPair& pair, const PointMatrix& points) {
  const DomainSpec& dom = pair.domain;
  const int n = dom.dimension();
  if (points.cols() != n)
    throw Error(ErrorCode::OUT_OF_DOMAIN, "point dimension does not match the domain");
  Vector values(points.rows());
  for (Index i = 0; i < points.rows(); ++i) {
    const Point x = points.row(i);
    if (!dom.contains(x, 1e-12 * (1.0 + x.norm())))
      throw Error(ErrorCode::OUT_OF_DOMAIN, "evaluation point outside the closed domain");
    if (dom.kind == DomainSpec::Kind::Rectangle) {
      Real v = pair.norm_const;
      for (int d = 0; d < n; ++d)
        v *= std::sin(pair.mode.rect[d] * pi() * x[d] / dom.sides[d]);
      values[i] = v;
    } else {
      const Real r = x.norm();
      const int m = pair.mode.angular;
      const Real radial = bessel_j(m, pair.bessel_root * r / dom.radius);
      Real ang = 1;
      if (m > 0) {
        const Real theta = std::atan2(x[1], x[0]);
        ang = pair.mode.parity == Mode::Parity::Cos ? std::cos(m * theta) : std::sin(m * theta);
      }
      values[i] = pair.norm_const * radial * ang;
    }
  }
  return values;
}

PointMatrix eval_eigenfunction_gradient(const EigenPair& pair, const PointMatrix& points) {
  const DomainSpec& dom = pair.domain;
  const int n = dom.dimension();
  PointMatrix grad(points.rows(), n);
  for (Index i = 0; i < points.rows(); ++i) {
    const Point x = points.row(i);
    if (!dom.contains(x, 1e-12 * (1.0 + x.norm())))
      throw Error(ErrorCode::OUT_OF_DOMAIN, "evaluation point outside the closed domain");
    if (dom.kind == DomainSpec::Kind::Rectangle) {
      for (int d = 0; d < n; ++d) {
        Real g = pair.norm_const;
        for (int e = 0; e < n; ++e) {
          const Real w = pair.mode.rect[e] * pi() / dom.sides[e];
          g *= (e == d) ? w * std::cos(w * x[e]) : std::sin(w * x[e]);
        }
        grad(i, d) = g;
      }
    } else {
      const Real r = x.norm();
      const int m = pair.mode.angular;
      const Real scale = pair.bessel_root / dom.radius;
      if (r < 1e-14 * dom.radius) {
        // Only |m| = 1 modes have a nonzero gradient at the center:
        // J_1(s) ~ s/2, so the field behaves linearly there.
        grad.row(i).setZero();
        if (m == 1) {
          const Real slope = pair.norm_const * scale * 0.5;
          grad(i, pair.mode.parity == Mode::Parity::Cos ? 0 : 1) = slope;
        }
        continue;
      }
      const Real theta = std::atan2(x[1], x[0]);
      const Real jm = bessel_j(m, scale * r);
      const Real djm = bessel_j_prime(m, scale * r) * scale;
      const Real cosm = std::cos(m * theta), sinm = std::sin(m * theta);
      Real ang, dang;
      if (pair.mode.parity == Mode::Parity::Cos) {
        ang = m == 0 ? 1.0 : cosm;
        dang = m == 0 ? 0.0 : -m * sinm;
      } else {
        ang = sinm;
        dang = m * cosm;
      }
      const Real dr = pair.norm_const * djm * ang;            // radial component
      const Real dt = pair.norm_const * jm * dang / r;        // tangential component
      const Real ct = std::cos(theta), st = std::sin(theta);
      grad(i, 0) = dr * ct - dt * st;
      grad(i, 1) = dr * st + dt * ct;
    }
  }
  return grad;
}

int Basis::max_angular_mode() const {
  if (domain.kind != DomainSpec::Kind::Disk) return 0;
  int m = 0;
  for (const auto& p : pairs) m = std::max(m, p.mode.angular);
  return m;
}

Matrix Basis::eval_table(const PointMatrix& points) const {
  Matrix table(size(), points.rows());
  if (domain.kind == DomainSpec::Kind::Rectangle) {
    for (Index j = 0; j < size(); ++j) table.row(j) = eval_eigenfunction(pairs[j], points);
    return table;
  }
  // Disk grids repeat the same radii across many angles; memoize the radial
  // Bessel factor per (m, root) so the table costs O(modes * unique radii).
  const Index q = points.rows();
  Vector r(q), theta(q);
  for (Index i = 0; i < q; ++i) {
    r[i] = points.row(i).norm();
    theta[i] = std::atan2(points(i, 1), points(i, 0));
  }
  for (Index j = 0; j < size(); ++j) {
    const EigenPair& p = pairs[j];
    const int m = p.mode.angular;
    std::unordered_map<Real, Real> radial;
    radial.reserve(128);
    for (Index i = 0; i < q; ++i) {
      auto it = radial.find(r[i]);
      Real jv;
      if (it == radial.end()) {
        jv = bessel_j(m, p.bessel_root * r[i] / domain.radius);
        radial.emplace(r[i], jv);
      } else {
        jv = it->second;
      }
      Real ang = 1;
      if (m > 0)
        ang = p.mode.parity == Mode::Parity::Cos ? std::cos(m * theta[i]) : std::sin(m * theta[i]);
      table(j, i) = p.norm_const * jv * ang;
    }
  }
  return table;
}

BasisPtr make_basis(const DomainSpec& domain, int count) {
  auto basis = std::make_shared<Basis>();
  basis->domain = domain;
  basis->pairs = eigenpairs(domain, count);
  basis->lambdas.resize(count);
  basis->sqrt_lambdas.resize(count);
  for (int j = 0; j < count; ++j) {
    basis->lambdas[j] = basis->pairs[j].lambda;
    basis->sqrt_lambdas[j] = std::sqrt(basis->pairs[j].lambda);
  }
  return basis;
}

}  // namespace sqrtlap
