#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tilt/error.hpp"
#include "tilt/strategies.hpp"
#include "tilt/synth.hpp"
#include "tilt/tilt.hpp"

namespace tilt {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct Rendered {
  Image image;
  WindowSpec window;
  TransformParams truth;
};

Rendered board(double theta, double t, double square = 40.0) {
  const WindowSpec w = WindowSpec::from_pixels(120, 120, 80, 80);
  const auto truth = branch_parameterization(theta, t, w.center);
  return {render_deformed(checkerboard_texture(square, 0.1, 0.9, w.center), 320, 320, truth, 4), w,
          truth};
}

double angle_between(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return std::acos(std::clamp(std::abs(a.dot(b)) / (a.norm() * b.norm()), 0.0, 1.0));
}

TEST(Tilt, AxisAlignedTextureIsAFixedPoint) {
  const Rendered r = board(0.0, 0.0);
  const SolveResult s = tilt(r.image, r.window, TransformParams::identity());
  EXPECT_TRUE(s.converged);
  EXPECT_LE(s.outer_iters, 3);
  EXPECT_TRUE(success_metric(s.tau, r.truth, r.window).success);
}

TEST(Tilt, RotatedEdgeRecoversItsDirection) {
  const WindowSpec w = WindowSpec::from_pixels(60, 60, 60, 60);
  const auto truth = branch_parameterization(10 * kDeg, 0.0, w.center);
  const Image img = render_deformed(edge_texture(w.center), 180, 180, truth, 4);
  const SolveResult s = tilt(img, w, TransformParams::identity());
  EXPECT_TRUE(s.converged);
  // The edge runs along tau(e_y); it must match the true edge direction.
  EXPECT_LT(angle_between(s.tau.linear().col(1), truth.linear().col(1)), 0.5 * kDeg);
  EXPECT_EQ(s.final_rank, 1);
  EXPECT_TRUE(success_metric(s.tau, truth, w, 1.0, Quotient::ColumnProfile).success);
}

TEST(Tilt, DeformedCheckerboardIsRectified) {
  const Rendered r = board(15 * kDeg, 0.3);
  const SolveResult s = tilt_multires(r.image, r.window, TransformParams::identity());
  const SuccessScore score = success_metric(s.tau, r.truth, r.window);
  EXPECT_TRUE(score.success) << "residual " << score.residual;
  EXPECT_EQ(s.final_rank, 2);
}

TEST(Tilt, ObjectiveIsNonIncreasing) {
  const Rendered r = board(8 * kDeg, 0.1);
  const SolveResult s = tilt(r.image, r.window, TransformParams::identity());
  // Inexact inner solves leave rises at the level of the inner tolerance.
  for (size_t k = 1; k < s.objective_trace.size(); ++k)
    EXPECT_LT(s.objective_trace[k] - s.objective_trace[k - 1], 1e-5 * s.objective_trace[k - 1]) << k;
  EXPECT_LT(s.objective_trace.back(), 0.9 * s.objective_trace.front());
  EXPECT_EQ(s.inner_iters.size(), static_cast<size_t>(s.outer_iters));
}

TEST(Tilt, IntensityScaleDoesNotChangeTheIterates) {
  const Rendered r = board(6 * kDeg, 0.05);
  const Image scaled(Matrix(r.image.pixels() * 0.5));
  const SolveResult a = tilt(r.image, r.window, TransformParams::identity());
  const SolveResult b = tilt(scaled, r.window, TransformParams::identity());
  EXPECT_EQ(a.outer_iters, b.outer_iters);
  EXPECT_LT((a.tau.params() - b.tau.params()).norm(), 1e-9);
}

TEST(Tilt, FlatWindowIsRejected) {
  const Image flat(100, 100, 0.5);
  try {
    tilt(flat, WindowSpec::from_pixels(20, 20, 40, 40), TransformParams::identity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroWindow);
  }
}

TEST(Tilt, MostlyOutsideWindowFailsImmediately) {
  const Rendered r = board(0.0, 0.0);
  try {
    tilt(r.image, WindowSpec::from_pixels(-50, 100, 80, 80), TransformParams::identity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ImmediateBoundaryFailure);
  }
}

TEST(Tilt, GroupMismatchAndBadOptionsAreRejected) {
  const Rendered r = board(0.0, 0.0);
  TiltOptions o;
  o.lambda_coeff = 0.0;
  EXPECT_THROW(tilt(r.image, r.window, TransformParams::identity(), o), Error);
  o = {};
  o.outer_max_iters = 0;
  EXPECT_THROW(tilt(r.image, r.window, TransformParams::identity(), o), Error);
}

TEST(Tilt, LambdaScalesWithWindowSize) {
  TiltOptions o;
  EXPECT_DOUBLE_EQ(o.lambda_for(25, 100), 0.1);
  o.lambda_coeff = 2.0;
  EXPECT_DOUBLE_EQ(o.lambda_for(64, 16), 0.25);
}

TEST(Tilt, StopReasonNames) {
  EXPECT_STREQ(to_string(StopReason::BoundaryHit), "boundary_hit");
  EXPECT_STREQ(to_string(StopReason::StepConverged), "step_converged");
}

}  // namespace
}  // namespace tilt
