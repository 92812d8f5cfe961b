#pragma once

#include <vector>

#include "tilt/tilt.hpp"

namespace tilt {

/// Number of coarser pyramid levels used for `window`: halve while the
/// smaller window side stays >= min_size, at most max_extra times.
int pyramid_depth(const WindowSpec& window, int min_size = 20, int max_extra = 2);

/// Coarse-to-fine TILT: solve on the coarsest level, rescale tau by 2 and
/// re-solve on each finer level. The level-0 result carries per-level records.
SolveResult tilt_multires(const Image& image, const WindowSpec& window, const TransformParams& tau0,
                          const TiltOptions& opts = {});

struct BranchGrids {
  std::vector<double> theta;  ///< radians
  std::vector<double> t;

  /// theta in {-60, -40, ..., 60} degrees, t in {-0.6, -0.3, 0, 0.3, 0.6}.
  static BranchGrids defaults();
};

/// Greedy search over rotation, then x-skew, then y-skew. Each branch is
/// solved at the coarsest level and scored by the nuclear norm of the
/// normalized full-resolution window under its solution; coarse objectives
/// are not compared because blurred textures can look low rank in the wrong
/// pose. Scores within a relative 1e-3 prefer the smallest |theta| (then
/// |t|). The winner is refined with tilt_multires.
SolveResult tilt_branch_and_bound(const Image& image, const WindowSpec& window,
                                  const TiltOptions& opts = {},
                                  const BranchGrids& grids = BranchGrids::defaults());

/// Affine multires TILT, embedded as a homography, then projective multires
/// TILT with the window's diagonal corners held fixed.
SolveResult tilt_projective_cascade(const Image& image, const WindowSpec& window,
                                    const TiltOptions& opts = {},
                                    const TransformParams& affine_init = TransformParams::identity());

}  // namespace tilt
