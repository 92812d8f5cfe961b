#include "tilt/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Geometry>

#include "tilt/error.hpp"
#include "tilt/jacobian.hpp"
#include "tilt/linalg.hpp"

namespace tilt {

namespace {

double positive_mod(double a, double p) {
  const double r = std::fmod(a, p);
  return r < 0.0 ? r + p : r;
}

}  // namespace

Texture checkerboard_texture(double square, double lo, double hi, const Point2& origin) {
  if (!(square > 0.0)) raise(ErrorCode::BadGeometry, "checkerboard square size must be positive");
  return [=](const Point2& p) {
    const auto i = static_cast<long long>(std::floor((p.x() - origin.x()) / square));
    const auto j = static_cast<long long>(std::floor((p.y() - origin.y()) / square));
    return ((i + j) & 1) == 0 ? lo : hi;
  };
}

Texture edge_texture(const Point2& origin, double lo, double hi) {
  return [=](const Point2& p) { return p.x() >= origin.x() ? hi : lo; };
}

Texture corner_texture(const Point2& origin, double lo, double hi) {
  return [=](const Point2& p) { return p.x() >= origin.x() && p.y() >= origin.y() ? hi : lo; };
}

Texture grid_lines_texture(double period, double width, const Point2& origin, double lo,
                           double hi) {
  if (!(period > width && width > 0.0)) raise(ErrorCode::BadGeometry, "bad grid line geometry");
  return [=](const Point2& p) {
    const bool on = positive_mod(p.x() - origin.x(), period) < width ||
                    positive_mod(p.y() - origin.y(), period) < width;
    return on ? hi : lo;
  };
}

Texture glyph_texture(double period, double arm, double width, const Point2& origin, double lo,
                      double hi) {
  if (!(period > 2.0 * arm && arm > width && width > 0.0)) {
    raise(ErrorCode::BadGeometry, "bad glyph geometry");
  }
  return [=](const Point2& p) {
    // Offsets from the nearest glyph centre on the lattice.
    const double dx = positive_mod(p.x() - origin.x() + 0.5 * period, period) - 0.5 * period;
    const double dy = positive_mod(p.y() - origin.y() + 0.5 * period, period) - 0.5 * period;
    const double hw = 0.5 * width;
    const bool bar_h = std::abs(dy) < hw && std::abs(dx) < arm;
    const bool bar_v = std::abs(dx) < hw && std::abs(dy) < arm;
    return bar_h || bar_v ? hi : lo;
  };
}

Texture clipped_texture(Texture inner, const Point2& min_corner, const Point2& max_corner,
                        double background) {
  return [=](const Point2& p) {
    const bool in = p.x() >= min_corner.x() && p.y() >= min_corner.y() &&
                    p.x() < max_corner.x() && p.y() < max_corner.y();
    return in ? inner(p) : background;
  };
}

Image render_texture(const Texture& texture, int width, int height, const InverseMap& inverse,
                     int supersample, double background) {
  if (supersample < 1) raise(ErrorCode::InvalidArgument, "supersample must be >= 1");
  Matrix px(height, width);
  const double step = 1.0 / supersample;
  const double weight = 1.0 / (supersample * supersample);
#pragma omp parallel for if (static_cast<long>(width) * height > 16384)
  for (int x = 0; x < width; ++x) {
    for (int y = 0; y < height; ++y) {
      double acc = 0.0;
      for (int a = 0; a < supersample; ++a) {
        for (int b = 0; b < supersample; ++b) {
          const Point2 q(x - 0.5 + (a + 0.5) * step, y - 0.5 + (b + 0.5) * step);
          const std::optional<Point2> t = inverse(q);
          acc += t ? texture(*t) : background;
        }
      }
      px(y, x) = acc * weight;
    }
  }
  return Image(std::move(px));
}

Image render_deformed(const Texture& texture, int width, int height,
                      const TransformParams& tau_true, int supersample) {
  const TransformParams inv = tau_true.inverse();
  const InverseMap map = [inv](const Point2& p) -> std::optional<Point2> {
    try {
      return inv.apply(p);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  return render_texture(texture, width, height, map, supersample);
}

Image gen_checkerboard(int m, int n, int squares) {
  if (squares < 2 || m % squares != 0 || n % squares != 0) {
    raise(ErrorCode::BadGeometry, "squares must be >= 2 and divide the grid evenly");
  }
  const int sy = m / squares;
  const int sx = n / squares;
  Matrix px(m, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < m; ++y) px(y, x) = ((x / sx + y / sy) & 1) == 0 ? 0.1 : 0.9;
  }
  return Image(std::move(px));
}

Image gen_edge(int m, int n) {
  if (m < 8 || n < 8) raise(ErrorCode::BadGeometry, "edge image must be at least 8x8");
  Matrix px(m, n);
  for (int x = 0; x < n; ++x) px.col(x).setConstant(x < n / 2 ? 0.1 : 0.9);
  return Image(std::move(px));
}

Image gen_corner(int m, int n) {
  if (m < 8 || n < 8) raise(ErrorCode::BadGeometry, "corner image must be at least 8x8");
  Matrix px = Matrix::Constant(m, n, 0.1);
  px.bottomRightCorner(m - m / 2, n - n / 2).setConstant(0.9);
  return Image(std::move(px));
}

Image corrupt_random(const Image& image, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    raise(ErrorCode::InvalidArgument, "corruption fraction must lie in [0, 1]");
  }
  Matrix px = image.pixels();
  const auto total = static_cast<size_t>(px.size());
  const auto count = static_cast<size_t>(std::floor(fraction * static_cast<double>(total)));
  std::mt19937_64 rng(seed);
  std::vector<size_t> index(total);
  std::iota(index.begin(), index.end(), size_t{0});
  // Partial Fisher-Yates: the first `count` entries are a uniform sample without replacement.
  for (size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<size_t> pick(i, total - 1);
    std::swap(index[i], index[pick(rng)]);
  }
  std::uniform_int_distribution<int> level(1, 254);
  for (size_t i = 0; i < count; ++i) px.data()[index[i]] = level(rng) / 255.0;
  return Image(std::move(px));
}

SolveResult transformed_pca_baseline(const Image& image, const WindowSpec& window,
                                     const TransformParams& tau0, int rank,
                                     const TiltOptions& opts) {
  if (rank < 1) raise(ErrorCode::InvalidArgument, "rank guess must be >= 1");
  opts.validate();
  tau0.validate();
  const PreparedImage prepared = PreparedImage::from(image);
  const SamplingGrid grid = SamplingGrid::from_window(window);

  SolveResult res;
  TransformParams tau = tau0;
  double prev = 0.0;
  for (int it = 1; it <= opts.outer_max_iters; ++it) {
    Linearization lin;
    try {
      lin = linearize(prepared, tau, grid);
    } catch (const Error&) {
      res.stop = StopReason::Diverged;
      break;
    }
    const Svd svd = thin_svd(lin.D);
    const Eigen::Index r = std::min<Eigen::Index>(rank, svd.S.size());
    const Matrix low = svd.U.leftCols(r) * svd.S.head(r).asDiagonal() * svd.V.leftCols(r).transpose();
    const ConstraintSet cons = build_constraints(opts.constraints, tau, window);
    const Vector dtau = ConstrainedStep(lin.J, cons.A_eq, false).solve(vec(Matrix(low - lin.D)));

    const double objective = (lin.D - low).squaredNorm();
    res.I0 = low;
    res.E = lin.D - low;
    res.window_norm = lin.norm;
    res.objective_trace.push_back(objective);
    res.outer_iters = it;
    res.tau = tau;

    const TransformParams next = tau.plus(dtau);
    if (!next.satisfies_invariants()) {
      res.stop = StopReason::Diverged;
      break;
    }
    const bool small = dtau.norm() < opts.outer_tol * (1.0 + tau.params().norm());
    const bool stalled = it > 1 && std::abs(prev - objective) < opts.objective_tol;
    tau = next;
    res.tau = tau;
    prev = objective;
    if (small || stalled) {
      res.converged = true;
      res.stop = small ? StopReason::StepConverged : StopReason::ObjectiveStalled;
      break;
    }
    if (it == opts.outer_max_iters) res.stop = StopReason::MaxIterations;
  }
  if (res.I0.size() > 0 && res.I0.norm() > 0.0) res.final_rank = thresholded_rank(res.I0);
  return res;
}

namespace {

Eigen::Matrix3d plane_rotation(double axis_angle, double amount) {
  const Eigen::Vector3d axis(std::cos(axis_angle), std::sin(axis_angle), 0.0);
  return Eigen::AngleAxisd(amount, axis).toRotationMatrix();
}

}  // namespace

TransformParams perspective_homography(double axis_angle, double amount, double depth,
                                       const Point2& center) {
  if (!(depth > 0.0)) raise(ErrorCode::InvalidArgument, "camera depth must be positive");
  const Eigen::Matrix3d rot = plane_rotation(axis_angle, amount);
  Eigen::Matrix3d P;
  P.col(0) = rot.col(0);
  P.col(1) = rot.col(1);
  P.col(2) = Eigen::Vector3d(0.0, 0.0, depth);
  const Eigen::Matrix3d K = Eigen::Vector3d(depth, depth, 1.0).asDiagonal();
  Eigen::Matrix3d to_center = Eigen::Matrix3d::Identity();
  to_center(0, 2) = -center.x();
  to_center(1, 2) = -center.y();
  Eigen::Matrix3d from_center = Eigen::Matrix3d::Identity();
  from_center(0, 2) = center.x();
  from_center(1, 2) = center.y();
  return TransformParams::projective(from_center * K * P * to_center);
}

InverseMap perspective_inverse(double axis_angle, double amount, double depth,
                               const Point2& center) {
  const Eigen::Matrix3d rot = plane_rotation(axis_angle, amount);
  const Eigen::Vector3d normal = rot.col(2);
  const Eigen::Vector3d origin(0.0, 0.0, depth);
  return [=](const Point2& q) -> std::optional<Point2> {
    const Eigen::Vector3d dir((q.x() - center.x()) / depth, (q.y() - center.y()) / depth, 1.0);
    const double denom = normal.dot(dir);
    if (std::abs(denom) < 1e-12) return std::nullopt;
    const double lambda = normal.dot(origin) / denom;
    if (!(lambda > 0.0)) return std::nullopt;
    const Eigen::Vector3d local = rot.transpose() * (lambda * dir - origin);
    return Point2(local.x() + center.x(), local.y() + center.y());
  };
}

}  // namespace tilt
