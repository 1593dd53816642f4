#pragma once

#include <Eigen/Dense>

namespace sqrtlap {

using Real = double;
using Index = Eigen::Index;

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Array = Eigen::ArrayXd;

// Points are stored row-wise, one coordinate tuple per row (n = 2 or 3 columns).
using PointMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Point = Eigen::Matrix<Real, 1, Eigen::Dynamic>;

constexpr Real pi() { return 3.14159265358979323846264338327950288; }

}  // namespace sqrtlap
