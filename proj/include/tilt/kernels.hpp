#pragma once

// Data-parallel inner loops. The functions in tilt::kernels are the OpenMP
// versions the library uses; tilt::kernels::reference holds plain serial
// loops kept as the test oracle and benchmark baseline.

#include <array>
#include <cmath>
#include <vector>

#include "tilt/image.hpp"
#include "tilt/transform.hpp"
#include "tilt/types.hpp"

namespace tilt::kernels {

/// Bilinear interpolation on a height x width grid. A point is inside when
/// 0 <= x <= w-1 and 0 <= y <= h-1; the last row/column reuse the previous
/// cell so lattice points on the far border are reproduced exactly.
inline Sample bilinear(const Matrix& px, double x, double y) {
  const Eigen::Index w = px.cols();
  const Eigen::Index h = px.rows();
  if (!(x >= 0.0 && y >= 0.0 && x <= static_cast<double>(w - 1) &&
        y <= static_cast<double>(h - 1))) {
    return {0.0, false};
  }
  Eigen::Index x0 = static_cast<Eigen::Index>(std::floor(x));
  Eigen::Index y0 = static_cast<Eigen::Index>(std::floor(y));
  if (x0 > w - 2) x0 = w > 1 ? w - 2 : 0;
  if (y0 > h - 2) y0 = h > 1 ? h - 2 : 0;
  const Eigen::Index x1 = w > 1 ? x0 + 1 : x0;
  const Eigen::Index y1 = h > 1 ? y0 + 1 : y0;
  const double fx = x - static_cast<double>(x0);
  const double fy = y - static_cast<double>(y0);
  const double top = (1.0 - fx) * px(y0, x0) + fx * px(y0, x1);
  const double bottom = (1.0 - fx) * px(y1, x0) + fx * px(y1, x1);
  return {(1.0 - fy) * top + fy * bottom, true};
}

/// Fixed 5-tap Gaussian (normalised to unit sum).
std::array<double, 5> gaussian_taps(double sigma);

/// Applies tau to every canonical point; returns false if any point hits a
/// vanishing projective denominator.
bool map_points(const TransformParams& tau, const std::vector<Point2>& canonical,
                std::vector<Point2>& mapped);
void sample_points(const Matrix& pixels, const std::vector<Point2>& mapped, Matrix& values,
                   Mask& inside);
Matrix separable_blur(const Matrix& pixels, const std::array<double, 5>& taps);
Gradient central_differences(const Matrix& grid);
void soft_threshold(Matrix& m, double mu);
/// Row e of J is grad(I)(tau(u_e)) * d tau(u_e)/d params; zero where the
/// gradient stencil leaves the image.
void jacobian_rows(const Matrix& gx, const Matrix& gy, const TransformParams& tau,
                   const std::vector<Point2>& canonical, Matrix& J);

namespace reference {

bool map_points(const TransformParams& tau, const std::vector<Point2>& canonical,
                std::vector<Point2>& mapped);
void sample_points(const Matrix& pixels, const std::vector<Point2>& mapped, Matrix& values,
                   Mask& inside);
Matrix separable_blur(const Matrix& pixels, const std::array<double, 5>& taps);
Gradient central_differences(const Matrix& grid);
void soft_threshold(Matrix& m, double mu);
void jacobian_rows(const Matrix& gx, const Matrix& gy, const TransformParams& tau,
                   const std::vector<Point2>& canonical, Matrix& J);

}  // namespace reference

}  // namespace tilt::kernels
