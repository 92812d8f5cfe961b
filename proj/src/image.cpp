#include "tilt/image.hpp"

#include <cmath>

#include "tilt/error.hpp"
#include "tilt/kernels.hpp"
#include "tilt/linalg.hpp"

namespace tilt {

Image::Image(int width, int height, double fill) {
  if (width < 1 || height < 1) raise(ErrorCode::InvalidArgument, "image must be at least 1x1");
  if (!std::isfinite(fill)) raise(ErrorCode::InvalidArgument, "image fill must be finite");
  pixels_ = Matrix::Constant(height, width, fill);
}

Image::Image(Matrix pixels) : pixels_(std::move(pixels)) {
  if (pixels_.rows() < 1 || pixels_.cols() < 1) {
    raise(ErrorCode::InvalidArgument, "image must be at least 1x1");
  }
  if (!pixels_.allFinite()) raise(ErrorCode::InvalidArgument, "image intensities must be finite");
}

WindowSpec WindowSpec::from_pixels(int x0, int y0, int width, int height) {
  WindowSpec w;
  w.half_extents = {0.5 * width, 0.5 * height};
  w.center = {x0 - 0.5 + w.half_extents.x(), y0 - 0.5 + w.half_extents.y()};
  w.rows = height;
  w.cols = width;
  w.validate();
  return w;
}

void WindowSpec::validate() const {
  if (!(half_extents.x() > 0.0 && half_extents.y() > 0.0)) {
    raise(ErrorCode::InvalidArgument, "window half extents must be positive");
  }
  if (rows < 2 || cols < 2) raise(ErrorCode::InvalidArgument, "window grid must be at least 2x2");
  if (!center.allFinite()) raise(ErrorCode::InvalidArgument, "window center must be finite");
}

Point2 WindowSpec::grid_point(int i, int j) const {
  const double sx = 2.0 * half_extents.x() / cols;
  const double sy = 2.0 * half_extents.y() / rows;
  return {center.x() - half_extents.x() + (j + 0.5) * sx,
          center.y() - half_extents.y() + (i + 0.5) * sy};
}

std::array<Point2, 4> WindowSpec::corners() const {
  const double hx = half_extents.x();
  const double hy = half_extents.y();
  return {Point2(center.x() - hx, center.y() - hy), Point2(center.x() + hx, center.y() - hy),
          Point2(center.x() + hx, center.y() + hy), Point2(center.x() - hx, center.y() + hy)};
}

WindowSpec WindowSpec::rescaled(double s) const {
  WindowSpec w;
  w.center = center * s;
  w.half_extents = half_extents * s;
  w.rows = std::max(2, static_cast<int>(std::lround(rows * s)));
  w.cols = std::max(2, static_cast<int>(std::lround(cols * s)));
  return w;
}

SamplingGrid SamplingGrid::from_window(const WindowSpec& window) {
  window.validate();
  std::vector<Point2> points;
  points.reserve(static_cast<size_t>(window.rows) * window.cols);
  for (int j = 0; j < window.cols; ++j) {
    for (int i = 0; i < window.rows; ++i) points.push_back(window.grid_point(i, j));
  }
  return SamplingGrid(window.rows, window.cols, std::move(points));
}

SamplingGrid SamplingGrid::from_fep(FepGrid grid) {
  if (grid.radial < 2 || grid.angular < 2) {
    raise(ErrorCode::InvalidArgument, "FEP grid must be at least 2x2");
  }
  std::vector<Point2> points;
  points.reserve(static_cast<size_t>(grid.radial) * grid.angular);
  for (int j = 0; j < grid.angular; ++j) {
    for (int i = 0; i < grid.radial; ++i) points.emplace_back(i + 1.0, static_cast<double>(j));
  }
  return SamplingGrid(grid.radial, grid.angular, std::move(points));
}

Sample sample_bilinear(const Image& image, const Point2& p) {
  return kernels::bilinear(image.pixels(), p.x(), p.y());
}

SampledWindow warp_grid(const Image& image, const TransformParams& tau, const SamplingGrid& grid) {
  std::vector<Point2> mapped;
  if (!kernels::map_points(tau, grid.points(), mapped)) {
    raise(ErrorCode::DegenerateTransform, "window grid maps through a vanishing denominator");
  }
  SampledWindow out{Matrix(grid.rows(), grid.cols()), Mask(grid.rows(), grid.cols())};
  kernels::sample_points(image.pixels(), mapped, out.values, out.inside);
  return out;
}

SampledWindow warp_window(const Image& image, const TransformParams& tau, const WindowSpec& window) {
  return warp_grid(image, tau, SamplingGrid::from_window(window));
}

Gradient spatial_gradient(const Matrix& grid) {
  if (grid.rows() < 3 || grid.cols() < 3) {
    raise(ErrorCode::GridTooSmall, "spatial gradient needs at least a 3x3 grid");
  }
  return kernels::central_differences(grid);
}

Gradient spatial_gradient(const Image& image) { return spatial_gradient(image.pixels()); }

Gradient spatial_gradient(const SampledWindow& window) { return spatial_gradient(window.values); }

Normalized normalize_frobenius(const Matrix& m) {
  const double norm = m.norm();
  if (!(norm >= 1e-12)) raise(ErrorCode::ZeroWindow, "window has (near) zero Frobenius norm");
  return {m / norm, norm};
}

Image gaussian_blur(const Image& image, double sigma) {
  return Image(kernels::separable_blur(image.pixels(), kernels::gaussian_taps(sigma)));
}

std::vector<Image> gaussian_pyramid(const Image& image, int min_size, int max_levels) {
  if (min_size < 1) raise(ErrorCode::InvalidArgument, "pyramid min_size must be >= 1");
  constexpr double kPyramidSigma = 0.8;
  std::vector<Image> levels{image};
  for (int k = 0; k < max_levels; ++k) {
    const Image& fine = levels.back();
    const int w = (fine.width() + 1) / 2;
    const int h = (fine.height() + 1) / 2;
    if (std::min(w, h) < min_size) break;
    const Matrix blurred = kernels::separable_blur(fine.pixels(), kernels::gaussian_taps(kPyramidSigma));
    Matrix coarse(h, w);
    for (int x = 0; x < w; ++x) {
      for (int y = 0; y < h; ++y) coarse(y, x) = blurred(2 * y, 2 * x);
    }
    levels.emplace_back(std::move(coarse));
  }
  return levels;
}

int thresholded_rank(const Matrix& m, double ratio) {
  const Vector s = singular_values(m);
  if (s.size() == 0 || !(s[0] > 0.0)) raise(ErrorCode::ZeroWindow, "rank of the zero matrix");
  const double cutoff = ratio * s[0];
  return static_cast<int>((s.array() >= cutoff).count());
}

}  // namespace tilt
