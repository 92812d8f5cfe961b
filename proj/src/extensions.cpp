#include "tilt/extensions.hpp"

#include <cmath>

#include "tilt/error.hpp"

namespace tilt {

SolveResult tilt_with_completion(const Image& image, const WindowSpec& window,
                                 const TransformParams& tau0, TiltOptions opts) {
  opts.completion = true;
  return tilt_multires(image, window, tau0, opts);
}

SymmetryMap symmetry_for(ReflectionAxes axes) {
  SymmetryMap g;
  g.flip_cols = axes != ReflectionAxes::Vertical;
  g.flip_rows = axes != ReflectionAxes::Horizontal;
  return g;
}

ReflectionAxes parse_axes(const std::string& name) {
  if (name == "x") return ReflectionAxes::Horizontal;
  if (name == "y") return ReflectionAxes::Vertical;
  if (name == "xy") return ReflectionAxes::Both;
  raise(ErrorCode::InvalidArgument, "symmetry must be x, y or xy, got '" + name + "'");
}

SolveResult tilt_reflective(const Image& image, const WindowSpec& window,
                            const TransformParams& tau0, ReflectionAxes axes, TiltOptions opts) {
  opts.symmetry = symmetry_for(axes);
  return tilt_multires(image, window, tau0, opts);
}

FepGrid default_fep_grid(double radius) {
  return {static_cast<int>(std::ceil(radius)), 360};
}

SolveResult tilt_rotational(const Image& image, const Point2& center, double radius,
                            const TiltOptions& opts, FepGrid grid) {
  if (!(radius > 5.0)) raise(ErrorCode::InvalidArgument, "FEP radius must exceed 5 pixels");
  if (grid.radial == 0 && grid.angular == 0) grid = default_fep_grid(radius);
  if (grid.angular % 4 != 0) {
    raise(ErrorCode::InvalidArgument, "FEP angular resolution must be a multiple of 4");
  }
  const TransformParams tau0 =
      TransformParams::rotational_fep(center, radius, Eigen::Matrix2d::Identity(), grid);
  // The window only carries the circle's bounding box for reporting.
  WindowSpec box;
  box.center = center;
  box.half_extents = {radius, radius};
  box.rows = grid.radial;
  box.cols = grid.angular;
  return tilt(image, box, tau0, opts);
}

}  // namespace tilt
