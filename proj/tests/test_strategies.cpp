#include <gtest/gtest.h>

#include <numbers>

#include "tilt/strategies.hpp"
#include "tilt/synth.hpp"

namespace tilt {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

TEST(Pyramid, DepthFollowsWindowSize) {
  EXPECT_EQ(pyramid_depth(WindowSpec::from_pixels(0, 0, 80, 80)), 2);
  EXPECT_EQ(pyramid_depth(WindowSpec::from_pixels(0, 0, 50, 90)), 1);
  EXPECT_EQ(pyramid_depth(WindowSpec::from_pixels(0, 0, 39, 39)), 0);
  EXPECT_EQ(pyramid_depth(WindowSpec::from_pixels(0, 0, 400, 400)), 2);
}

TEST(Multires, RecordsEveryLevelAndRectifies) {
  const WindowSpec w = WindowSpec::from_pixels(120, 120, 80, 80);
  const auto truth = branch_parameterization(12 * kDeg, 0.2, w.center);
  const Image img = render_deformed(checkerboard_texture(40, 0.1, 0.9, w.center), 320, 320, truth, 4);
  const SolveResult s = tilt_multires(img, w, TransformParams::identity());
  ASSERT_EQ(s.levels.size(), 3u);
  EXPECT_EQ(s.levels.front().level, 2);
  EXPECT_EQ(s.levels.back().level, 0);
  EXPECT_EQ(s.levels.back().window_rows, 80);
  EXPECT_EQ(s.levels.front().window_rows, 20);
  EXPECT_TRUE(success_metric(s.tau, truth, w).success);
}

TEST(BranchAndBound, RecoversLargeRotation) {
  const WindowSpec w = WindowSpec::from_pixels(120, 120, 80, 80);
  const auto truth = branch_parameterization(30 * kDeg, 0.3, w.center);
  const Image img = render_deformed(checkerboard_texture(20, 0.1, 0.9, w.center), 320, 320, truth, 4);
  const SolveResult s = tilt_branch_and_bound(img, w);
  const SuccessScore score = success_metric(s.tau, truth, w);
  EXPECT_TRUE(score.success) << "residual " << score.residual;
  ASSERT_FALSE(s.branches.empty());
  for (const auto& b : s.branches) {
    if (b.ok) {
      EXPECT_GT(b.score, 0.0);
    }
  }
}

TEST(BranchAndBound, PlainTiltFailsWhereSearchSucceeds) {
  const WindowSpec w = WindowSpec::from_pixels(120, 120, 80, 80);
  const auto truth = branch_parameterization(30 * kDeg, 0.3, w.center);
  const Image img = render_deformed(checkerboard_texture(20, 0.1, 0.9, w.center), 320, 320, truth, 4);
  const SolveResult s = tilt_multires(img, w, TransformParams::identity());
  EXPECT_FALSE(success_metric(s.tau, truth, w).success);
}

TEST(BranchGrids, Defaults) {
  const BranchGrids g = BranchGrids::defaults();
  EXPECT_EQ(g.theta.size(), 7u);
  EXPECT_EQ(g.t.size(), 5u);
  EXPECT_NEAR(g.theta.front(), -60 * kDeg, 1e-12);
}

TEST(ProjectiveCascade, RectifiesPerspectiveView) {
  const WindowSpec w = WindowSpec::from_pixels(120, 120, 80, 80);
  const double depth = 2.0 * w.cols;
  const double axis = 30 * kDeg;
  const double amount = 35 * kDeg;
  const auto truth = perspective_homography(axis, amount, depth, w.center);
  const Image img = render_texture(checkerboard_texture(40, 0.1, 0.9, w.center), 320, 320,
                                   perspective_inverse(axis, amount, depth, w.center), 4);
  const SolveResult s = tilt_projective_cascade(img, w);
  EXPECT_EQ(s.tau.group(), TransformGroup::Projective);
  const SuccessScore score = success_metric(s.tau, truth, w);
  EXPECT_TRUE(score.success) << "residual " << score.residual;
}

}  // namespace
}  // namespace tilt
