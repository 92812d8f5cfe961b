#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "tilt/image.hpp"
#include "tilt/tilt.hpp"

namespace tilt {

/// Intensity as a function of rectified (texture) coordinates.
using Texture = std::function<double(const Point2&)>;
/// Image point -> texture point; nullopt where no texture is visible.
using InverseMap = std::function<std::optional<Point2>(const Point2&)>;

/// Squares of side `square` alternating lo/hi; a square corner sits at `origin`.
Texture checkerboard_texture(double square, double lo = 0.1, double hi = 0.9,
                             const Point2& origin = Point2::Zero());
/// Vertical step edge at x = origin.x (hi on the right).
Texture edge_texture(const Point2& origin, double lo = 0.1, double hi = 0.9);
/// hi in the quadrant x >= origin.x, y >= origin.y.
Texture corner_texture(const Point2& origin, double lo = 0.1, double hi = 0.9);
/// Horizontal and vertical lines of width `width` every `period` pixels (a plaid).
Texture grid_lines_texture(double period, double width, const Point2& origin = Point2::Zero(),
                           double lo = 0.1, double hi = 0.9);
/// Sparse plus-sign glyphs on a `period` lattice; arms `arm` long, `width` thick.
Texture glyph_texture(double period, double arm, double width,
                      const Point2& origin = Point2::Zero(), double lo = 0.1, double hi = 0.9);
/// Restricts `inner` to a rectangle, `background` elsewhere.
Texture clipped_texture(Texture inner, const Point2& min_corner, const Point2& max_corner,
                        double background);

/// Renders texture o inverse with `supersample`^2 samples per pixel.
Image render_texture(const Texture& texture, int width, int height, const InverseMap& inverse,
                     int supersample = 4, double background = 0.5);
/// Image of the texture deformed by tau_true: image = texture o tau_true^-1.
Image render_deformed(const Texture& texture, int width, int height,
                      const TransformParams& tau_true, int supersample = 4);

/// Exact m x n checkerboard with `squares` squares per side (intensities 0.1/0.9).
/// Throws BadGeometry unless `squares` >= 2 divides both m and n.
Image gen_checkerboard(int m, int n, int squares);
Image gen_edge(int m, int n);
Image gen_corner(int m, int n);

/// Replaces floor(fraction * pixels) distinct pixels by uniform values
/// k / 255 with k in [1, 254].
Image corrupt_random(const Image& image, double fraction, std::uint64_t seed);

/// Least-squares alignment against a rank-r PCA model: alternate a rank-r
/// truncated SVD of the normalized window with a constrained Gauss-Newton step on tau.
SolveResult transformed_pca_baseline(const Image& image, const WindowSpec& window,
                                     const TransformParams& tau0, int rank,
                                     const TiltOptions& opts = {});

/// Homography of a plane rotated by `amount` about an in-plane axis at
/// angle `axis_angle` (both radians), viewed by a pinhole camera at `depth`
/// with focal length `depth`, so amount 0 is the identity. Coordinates are
/// relative to `center`.
TransformParams perspective_homography(double axis_angle, double amount, double depth,
                                       const Point2& center);
/// The matching inverse map for rendering (rays that miss the plane give nullopt).
InverseMap perspective_inverse(double axis_angle, double amount, double depth,
                               const Point2& center);

}  // namespace tilt
