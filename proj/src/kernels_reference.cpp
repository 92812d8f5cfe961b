// Serial reference versions of the kernels in kernels_omp.cpp.

#include <cmath>

#include "tilt/error.hpp"
#include "tilt/kernels.hpp"

namespace tilt::kernels::reference {

namespace {

Eigen::Index reflect(Eigen::Index i, Eigen::Index n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

}  // namespace

bool map_points(const TransformParams& tau, const std::vector<Point2>& canonical,
                std::vector<Point2>& mapped) {
  mapped.clear();
  mapped.reserve(canonical.size());
  bool ok = true;
  for (const Point2& u : canonical) {
    try {
      mapped.push_back(tau.apply(u));
    } catch (const Error&) {
      mapped.push_back(Point2::Constant(std::nan("")));
      ok = false;
    }
  }
  return ok;
}

void sample_points(const Matrix& pixels, const std::vector<Point2>& mapped, Matrix& values,
                   Mask& inside) {
  for (size_t e = 0; e < mapped.size(); ++e) {
    const Sample s = bilinear(pixels, mapped[e].x(), mapped[e].y());
    values.data()[e] = s.value;
    inside.data()[e] = s.inside;
  }
}

Matrix separable_blur(const Matrix& pixels, const std::array<double, 5>& taps) {
  const Eigen::Index h = pixels.rows();
  const Eigen::Index w = pixels.cols();
  Matrix horizontal(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -2; k <= 2; ++k) acc += taps[k + 2] * pixels(y, reflect(x + k, w));
      horizontal(y, x) = acc;
    }
  }
  Matrix out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -2; k <= 2; ++k) acc += taps[k + 2] * horizontal(reflect(y + k, h), x);
      out(y, x) = acc;
    }
  }
  return out;
}

Gradient central_differences(const Matrix& grid) {
  const Eigen::Index h = grid.rows();
  const Eigen::Index w = grid.cols();
  Gradient g{Matrix(h, w), Matrix(h, w)};
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      const Eigen::Index xl = x == 0 ? 0 : x - 1;
      const Eigen::Index xr = x == w - 1 ? w - 1 : x + 1;
      const Eigen::Index yu = y == 0 ? 0 : y - 1;
      const Eigen::Index yd = y == h - 1 ? h - 1 : y + 1;
      g.gx(y, x) = (grid(y, xr) - grid(y, xl)) / static_cast<double>(xr - xl);
      g.gy(y, x) = (grid(yd, x) - grid(yu, x)) / static_cast<double>(yd - yu);
    }
  }
  return g;
}

void soft_threshold(Matrix& m, double mu) {
  for (Eigen::Index e = 0; e < m.size(); ++e) {
    const double x = m.data()[e];
    const double magnitude = std::max(std::abs(x) - mu, 0.0);
    m.data()[e] = x > 0 ? magnitude : (x < 0 ? -magnitude : 0.0);
  }
}

void jacobian_rows(const Matrix& gx, const Matrix& gy, const TransformParams& tau,
                   const std::vector<Point2>& canonical, Matrix& J) {
  J.setZero(static_cast<Eigen::Index>(canonical.size()), tau.size());
  for (size_t e = 0; e < canonical.size(); ++e) {
    ParamJacobian dp;
    const Point2 q = tau.apply(canonical[e], &dp);
    const Sample sx = bilinear(gx, q.x(), q.y());
    const Sample sy = bilinear(gy, q.x(), q.y());
    if (!sx.inside) continue;
    J.row(static_cast<Eigen::Index>(e)) = sx.value * dp.row(0) + sy.value * dp.row(1);
  }
}

}  // namespace tilt::kernels::reference
