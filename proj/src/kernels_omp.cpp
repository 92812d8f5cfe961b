#include <cmath>

#include "tilt/error.hpp"
#include "tilt/kernels.hpp"

namespace tilt::kernels {

namespace {

// Below this many entries the fork/join cost dominates.
constexpr Eigen::Index kParallelThreshold = 4096;

inline Eigen::Index reflect(Eigen::Index i, Eigen::Index n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

}  // namespace

std::array<double, 5> gaussian_taps(double sigma) {
  std::array<double, 5> taps{};
  double sum = 0.0;
  for (int k = -2; k <= 2; ++k) {
    taps[k + 2] = std::exp(-0.5 * k * k / (sigma * sigma));
    sum += taps[k + 2];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

bool map_points(const TransformParams& tau, const std::vector<Point2>& canonical,
                std::vector<Point2>& mapped) {
  const auto n = static_cast<std::ptrdiff_t>(canonical.size());
  mapped.resize(canonical.size());
  bool ok = true;
#pragma omp parallel for if (n > kParallelThreshold) reduction(&& : ok)
  for (std::ptrdiff_t e = 0; e < n; ++e) {
    try {
      mapped[e] = tau.apply(canonical[e]);
    } catch (const Error&) {
      mapped[e] = Point2::Constant(std::nan(""));
      ok = false;
    }
  }
  return ok;
}

void sample_points(const Matrix& pixels, const std::vector<Point2>& mapped, Matrix& values,
                   Mask& inside) {
  const auto n = static_cast<std::ptrdiff_t>(mapped.size());
#pragma omp parallel for if (n > kParallelThreshold)
  for (std::ptrdiff_t e = 0; e < n; ++e) {
    const Sample s = bilinear(pixels, mapped[e].x(), mapped[e].y());
    values.data()[e] = s.value;
    inside.data()[e] = s.inside;
  }
}

Matrix separable_blur(const Matrix& pixels, const std::array<double, 5>& taps) {
  const Eigen::Index h = pixels.rows();
  const Eigen::Index w = pixels.cols();
  Matrix horizontal(h, w);
  Matrix out(h, w);
  const bool parallel = h * w > kParallelThreshold;
#pragma omp parallel if (parallel)
  {
#pragma omp for
    for (Eigen::Index x = 0; x < w; ++x) {
      for (Eigen::Index y = 0; y < h; ++y) {
        double acc = 0.0;
        for (int k = -2; k <= 2; ++k) acc += taps[k + 2] * pixels(y, reflect(x + k, w));
        horizontal(y, x) = acc;
      }
    }
#pragma omp for
    for (Eigen::Index x = 0; x < w; ++x) {
      for (Eigen::Index y = 0; y < h; ++y) {
        double acc = 0.0;
        for (int k = -2; k <= 2; ++k) acc += taps[k + 2] * horizontal(reflect(y + k, h), x);
        out(y, x) = acc;
      }
    }
  }
  return out;
}

Gradient central_differences(const Matrix& grid) {
  const Eigen::Index h = grid.rows();
  const Eigen::Index w = grid.cols();
  Gradient g{Matrix(h, w), Matrix(h, w)};
#pragma omp parallel for if (h * w > kParallelThreshold)
  for (Eigen::Index x = 0; x < w; ++x) {
    for (Eigen::Index y = 0; y < h; ++y) {
      if (x == 0) {
        g.gx(y, x) = grid(y, 1) - grid(y, 0);
      } else if (x == w - 1) {
        g.gx(y, x) = grid(y, w - 1) - grid(y, w - 2);
      } else {
        g.gx(y, x) = 0.5 * (grid(y, x + 1) - grid(y, x - 1));
      }
      if (y == 0) {
        g.gy(y, x) = grid(1, x) - grid(0, x);
      } else if (y == h - 1) {
        g.gy(y, x) = grid(h - 1, x) - grid(h - 2, x);
      } else {
        g.gy(y, x) = 0.5 * (grid(y + 1, x) - grid(y - 1, x));
      }
    }
  }
  return g;
}

void soft_threshold(Matrix& m, double mu) {
  const Eigen::Index n = m.size();
  double* d = m.data();
#pragma omp parallel for simd if (n > 4 * kParallelThreshold)
  for (Eigen::Index e = 0; e < n; ++e) {
    const double a = std::abs(d[e]) - mu;
    d[e] = a > 0.0 ? std::copysign(a, d[e]) : 0.0;
  }
}

void jacobian_rows(const Matrix& gx, const Matrix& gy, const TransformParams& tau,
                   const std::vector<Point2>& canonical, Matrix& J) {
  const auto n = static_cast<std::ptrdiff_t>(canonical.size());
  const Eigen::Index p = tau.size();
  J.resize(n, p);
  bool ok = true;
#pragma omp parallel for if (n > kParallelThreshold / 4) reduction(&& : ok)
  for (std::ptrdiff_t e = 0; e < n; ++e) {
    ParamJacobian dp;
    Point2 q;
    try {
      q = tau.apply(canonical[e], &dp);
    } catch (const Error&) {
      ok = false;
      J.row(e).setZero();
      continue;
    }
    const Sample sx = bilinear(gx, q.x(), q.y());
    const Sample sy = bilinear(gy, q.x(), q.y());
    if (!sx.inside) {
      J.row(e).setZero();
      continue;
    }
    for (Eigen::Index k = 0; k < p; ++k) J(e, k) = sx.value * dp(0, k) + sy.value * dp(1, k);
  }
  if (!ok) raise(ErrorCode::DegenerateTransform, "Jacobian point maps to the line at infinity");
}

}  // namespace tilt::kernels
