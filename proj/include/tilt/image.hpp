#pragma once

#include <array>
#include <vector>

#include "tilt/transform.hpp"
#include "tilt/types.hpp"

namespace tilt {

/// Grayscale raster with intensities nominally in [0, 1]. Pixel (x, y) is
/// column x, row y; stored as a height x width matrix.
class Image {
 public:
  Image(int width, int height, double fill = 0.0);
  /// Takes ownership of a height x width matrix; all entries must be finite.
  explicit Image(Matrix pixels);

  int width() const { return static_cast<int>(pixels_.cols()); }
  int height() const { return static_cast<int>(pixels_.rows()); }
  double operator()(int x, int y) const { return pixels_(y, x); }
  const Matrix& pixels() const { return pixels_; }

 private:
  Matrix pixels_;
};

/// Axis-aligned rectangle in image coordinates sampled on a rows x cols
/// cell-centred lattice. With half_extents = (cols/2, rows/2) the lattice
/// spacing is exactly one pixel, so the identity transform resamples pixels.
struct WindowSpec {
  Point2 center = Point2::Zero();
  Eigen::Vector2d half_extents = Eigen::Vector2d::Ones();
  int rows = 2;
  int cols = 2;

  /// Window covering pixel columns [x0, x0+width) and rows [y0, y0+height).
  static WindowSpec from_pixels(int x0, int y0, int width, int height);

  void validate() const;
  Point2 grid_point(int i, int j) const;
  /// Corners in the order top-left, top-right, bottom-right, bottom-left.
  std::array<Point2, 4> corners() const;
  /// The same window expressed at a pyramid level scaled by `s` (s = 1/2 per level).
  WindowSpec rescaled(double s) const;
};

/// Canonical coordinates of every window entry, column-major.
class SamplingGrid {
 public:
  static SamplingGrid from_window(const WindowSpec& window);
  /// Entry (i, j) of a Frieze-expansion grid is canonical point (i + 1, j).
  static SamplingGrid from_fep(FepGrid grid);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Point2& point(int i, int j) const { return points_[static_cast<size_t>(j) * rows_ + i]; }
  const std::vector<Point2>& points() const { return points_; }

 private:
  SamplingGrid(int rows, int cols, std::vector<Point2> points)
      : rows_(rows), cols_(cols), points_(std::move(points)) {}

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Point2> points_;
};

struct SampledWindow {
  Matrix values;
  /// True where the whole bilinear stencil lies inside the image.
  Mask inside;

  Eigen::Index inside_count() const { return inside.count(); }
  double inside_fraction() const {
    return static_cast<double>(inside.count()) / static_cast<double>(inside.size());
  }
};

struct Sample {
  double value = 0.0;
  bool inside = false;
};

struct Gradient {
  Matrix gx;
  Matrix gy;
};

struct Normalized {
  Matrix matrix;
  double norm = 0.0;
};

Sample sample_bilinear(const Image& image, const Point2& p);

SampledWindow warp_window(const Image& image, const TransformParams& tau, const WindowSpec& window);
SampledWindow warp_grid(const Image& image, const TransformParams& tau, const SamplingGrid& grid);

/// Central differences inside, one-sided differences on the border.
/// Throws GridTooSmall below 3x3.
Gradient spatial_gradient(const Matrix& grid);
Gradient spatial_gradient(const Image& image);
Gradient spatial_gradient(const SampledWindow& window);

/// Throws ZeroWindow when the Frobenius norm is below 1e-12.
Normalized normalize_frobenius(const Matrix& m);

/// 5-tap separable Gaussian with reflect padding.
Image gaussian_blur(const Image& image, double sigma);

/// Level 0 is the input; each further level is blurred (sigma 0.8) and
/// decimated by keeping even rows and columns, so level k has
/// ceil(dim / 2^k) pixels and level-k pixel i sits at level-0 coordinate 2^k i.
std::vector<Image> gaussian_pyramid(const Image& image, int min_size = 20, int max_levels = 2);

/// Number of singular values >= ratio * sigma_max. Throws ZeroWindow on a zero matrix.
int thresholded_rank(const Matrix& m, double ratio = 1.0 / 30.0);

}  // namespace tilt
