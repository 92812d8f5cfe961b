#include <gtest/gtest.h>

#include "checks.hpp"
#include "tilt/jacobian.hpp"

namespace tilt {
namespace {

using checks::finite_difference_jacobian;
using checks::relative_error;

class JacobianCheck : public ::testing::Test {
 protected:
  const Image image = checks::bilinear_field(120, 110);
  const WindowSpec window = WindowSpec::from_pixels(35, 30, 40, 36);
};

TEST_F(JacobianCheck, AffineMatchesFiniteDifferences) {
  const auto tau = branch_parameterization(0.25, 0.15, window.center);
  const Matrix J = image_param_jacobian(image, tau, window);
  EXPECT_EQ(J.cols(), 6);
  EXPECT_LT(relative_error(J, finite_difference_jacobian(image, tau, window, 1e-5)), 1e-4);
}

TEST_F(JacobianCheck, ProjectiveMatchesFiniteDifferences) {
  Eigen::Matrix3d H = branch_parameterization(-0.2, 0.1, window.center).homography();
  H(2, 0) = 4e-4;
  H(2, 1) = -3e-4;
  const auto tau = TransformParams::projective(H / H(2, 2));
  const Matrix J = image_param_jacobian(image, tau, window);
  EXPECT_EQ(J.cols(), 8);
  EXPECT_LT(relative_error(J, finite_difference_jacobian(image, tau, window, 1e-6)), 1e-4);
}

TEST_F(JacobianCheck, RotationalFepMatchesFiniteDifferences) {
  Eigen::Matrix2d A;
  A << 1.05, 0.1, -0.05, 0.95;
  const auto tau = TransformParams::rotational_fep(Point2(60.0, 55.0), 25.0, A, {25, 120});
  const Matrix J = image_param_jacobian(image, tau, window);
  EXPECT_EQ(J.cols(), 7);
  EXPECT_EQ(J.rows(), 25 * 120);
  EXPECT_LT(relative_error(J, finite_difference_jacobian(image, tau, window, 1e-5)), 1e-4);
}

TEST_F(JacobianCheck, ColumnsAreTangentToTheUnitSphere) {
  const auto tau = branch_parameterization(0.1, 0.0, window.center);
  const Matrix J = image_param_jacobian(image, tau, window);
  const Matrix v = warp_window(image, tau, window).values;
  const Vector d = vec(v) / v.norm();
  EXPECT_LT((J.transpose() * d).cwiseAbs().maxCoeff(), 1e-10 * J.norm());
}

TEST(Jacobian, RowsVanishOutsideTheImage) {
  const Image image = checks::bilinear_field(40, 40);
  const WindowSpec window = WindowSpec::from_pixels(-10, 5, 20, 20);
  const Matrix J = image_param_jacobian(image, TransformParams::identity(), window);
  // The first window column (x = -10) lies outside.
  EXPECT_EQ(J.topRows(20).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_GT(J.bottomRows(20).cwiseAbs().maxCoeff(), 0.0);
}

}  // namespace
}  // namespace tilt
