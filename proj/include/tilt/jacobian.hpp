#pragma once

#include "tilt/image.hpp"
#include "tilt/transform.hpp"
#include "tilt/types.hpp"

namespace tilt {

/// An image together with its pre-smoothed gradient images, computed once
/// and reused by every Jacobian evaluation on the same image.
struct PreparedImage {
  Image image;
  Matrix gx;
  Matrix gy;

  /// Gradients are central differences of the image blurred with sigma 0.5.
  static PreparedImage from(const Image& image);
};

/// Everything one outer iteration needs at the current tau.
struct Linearization {
  SampledWindow warped;  ///< raw I o tau with its inside mask
  Matrix D;              ///< warped values / ||warped||_F
  double norm = 0.0;
  /// d vec(D) / d params, rows in column-major window order.
  Matrix J;
};

/// Warps, normalizes, and differentiates. Throws ZeroWindow on a black window.
Linearization linearize(const PreparedImage& prepared, const TransformParams& tau,
                        const SamplingGrid& grid);

/// (m n) x p derivative of the Frobenius-normalized warped window.
Matrix image_param_jacobian(const Image& image, const TransformParams& tau,
                            const WindowSpec& window);

}  // namespace tilt
