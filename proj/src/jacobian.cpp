#include "tilt/jacobian.hpp"

#include "tilt/kernels.hpp"

namespace tilt {

namespace {
constexpr double kGradientSigma = 0.5;
}

PreparedImage PreparedImage::from(const Image& image) {
  const Matrix smooth = kernels::separable_blur(image.pixels(), kernels::gaussian_taps(kGradientSigma));
  Gradient g = image.width() >= 2 && image.height() >= 2
                   ? kernels::central_differences(smooth)
                   : Gradient{Matrix::Zero(image.height(), image.width()),
                              Matrix::Zero(image.height(), image.width())};
  return {image, std::move(g.gx), std::move(g.gy)};
}

Linearization linearize(const PreparedImage& prepared, const TransformParams& tau,
                        const SamplingGrid& grid) {
  Linearization out;
  out.warped = warp_grid(prepared.image, tau, grid);
  Normalized n = normalize_frobenius(out.warped.values);
  out.D = std::move(n.matrix);
  out.norm = n.norm;
  kernels::jacobian_rows(prepared.gx, prepared.gy, tau, grid.points(), out.J);
  // Quotient rule for D = W / ||W||: dD = (dW - D (D . dW)) / ||W||.
  const auto d = vec(out.D);
  const Eigen::RowVectorXd proj = d.transpose() * out.J;
  out.J -= d * proj;
  out.J /= out.norm;
  return out;
}

Matrix image_param_jacobian(const Image& image, const TransformParams& tau,
                            const WindowSpec& window) {
  const SamplingGrid grid = tau.group() == TransformGroup::RotationalFEP
                                ? SamplingGrid::from_fep(tau.fep_grid())
                                : SamplingGrid::from_window(window);
  return linearize(PreparedImage::from(image), tau, grid).J;
}

}  // namespace tilt
