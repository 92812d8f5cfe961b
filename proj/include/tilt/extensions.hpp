#pragma once

#include "tilt/strategies.hpp"

namespace tilt {

/// Multires TILT whose data terms live only on in-image samples; the
/// low-rank component is completed over the rest of the window. Needs at
/// least 30% of the window inside the image (InsufficientSupport otherwise).
SolveResult tilt_with_completion(const Image& image, const WindowSpec& window,
                                 const TransformParams& tau0, TiltOptions opts = {});

enum class ReflectionAxes { Horizontal, Vertical, Both };

/// Horizontal mirrors the window left-right (columns), Vertical top-bottom (rows).
SymmetryMap symmetry_for(ReflectionAxes axes);
ReflectionAxes parse_axes(const std::string& name);  ///< "x", "y" or "xy"

/// Multires TILT with I0 constrained to be mirror symmetric. The window
/// centre is not pinned, so the window can slide onto the symmetry axis.
SolveResult tilt_reflective(const Image& image, const WindowSpec& window,
                            const TransformParams& tau0, ReflectionAxes axes,
                            TiltOptions opts = {});

/// Default FEP lattice: ceil(radius) radial by 360 angular samples.
FepGrid default_fep_grid(double radius);

/// TILT over rotational FEP maps: the circle (centre, radius) plus an affine
/// distortion are refined so the unrolled pattern becomes low rank.
SolveResult tilt_rotational(const Image& image, const Point2& center, double radius,
                            const TiltOptions& opts = {}, FepGrid grid = {});

}  // namespace tilt
