#pragma once

#include <Eigen/Dense>

namespace tilt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Mask = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;
using Point2 = Eigen::Vector2d;

// Window matrices are vectorized column-major everywhere (J rows, vec(I0),
// vec(E), vec(Y)); Eigen's default storage order matches that.
inline Eigen::Map<const Vector> vec(const Matrix& m) { return {m.data(), m.size()}; }
inline Eigen::Map<Vector> vec(Matrix& m) { return {m.data(), m.size()}; }

}  // namespace tilt
