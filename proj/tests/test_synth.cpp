#include <gtest/gtest.h>

#include <numbers>

#include "tilt/error.hpp"
#include "tilt/experiments.hpp"
#include "tilt/synth.hpp"

namespace tilt {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

TEST(Synth, GeneratorsHaveTheirRanks) {
  const Image b = gen_checkerboard(60, 40, 4);
  EXPECT_EQ(b.height(), 60);
  EXPECT_EQ(b.width(), 40);
  EXPECT_EQ(thresholded_rank(b.pixels()), 2);
  EXPECT_EQ(thresholded_rank(gen_edge(32, 32).pixels()), 1);
  EXPECT_EQ(thresholded_rank(gen_corner(32, 32).pixels()), 2);
  EXPECT_DOUBLE_EQ(b.pixels().minCoeff(), 0.1);
  EXPECT_DOUBLE_EQ(b.pixels().maxCoeff(), 0.9);
}

TEST(Synth, CheckerboardGeometryIsValidated) {
  EXPECT_THROW(gen_checkerboard(60, 40, 7), Error);
  EXPECT_THROW(gen_checkerboard(60, 60, 1), Error);
  try {
    gen_checkerboard(10, 10, 3);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadGeometry);
  }
}

TEST(Synth, CorruptionCountAndValues) {
  const Image img(50, 40, 0.0);
  const Image c = corrupt_random(img, 0.3, 5);
  const Matrix& px = c.pixels();
  EXPECT_EQ((px.array() != 0.0).count(), 600);
  EXPECT_GE(px.maxCoeff(), 1.0 / 255.0);
  EXPECT_LE(px.maxCoeff(), 254.0 / 255.0);
  for (Eigen::Index k = 0; k < px.size(); ++k) {
    const double v = px.data()[k] * 255.0;
    if (v != 0.0) {
      EXPECT_NEAR(v, std::round(v), 1e-9);
    }
  }
}

TEST(Synth, CorruptionIsDeterministicPerSeed) {
  const Image img = gen_checkerboard(40, 40, 4);
  EXPECT_EQ(corrupt_random(img, 0.2, 9).pixels(), corrupt_random(img, 0.2, 9).pixels());
  EXPECT_NE(corrupt_random(img, 0.2, 9).pixels(), corrupt_random(img, 0.2, 10).pixels());
  EXPECT_EQ(corrupt_random(img, 0.0, 9).pixels(), img.pixels());
  EXPECT_THROW(corrupt_random(img, 1.5, 1), Error);
}

TEST(Synth, PerspectiveAmountZeroIsIdentity) {
  const Point2 c(50, 40);
  const auto H = perspective_homography(0.7, 0.0, 160.0, c);
  EXPECT_LT((H.homography() - Eigen::Matrix3d::Identity()).norm(), 1e-12);
  const auto inv = perspective_inverse(0.7, 0.0, 160.0, c);
  const auto p = inv(Point2(3, 4));
  ASSERT_TRUE(p.has_value());
  EXPECT_LT((*p - Point2(3, 4)).norm(), 1e-12);
}

TEST(Synth, PerspectiveInverseInvertsHomography) {
  const Point2 c(50, 40);
  const auto H = perspective_homography(0.4, 30 * kDeg, 160.0, c);
  const auto inv = perspective_inverse(0.4, 30 * kDeg, 160.0, c);
  for (const Point2& q : {Point2(30, 20), Point2(70, 55), c}) {
    const auto p = inv(H.apply(q));
    ASSERT_TRUE(p.has_value());
    EXPECT_LT((*p - q).norm(), 1e-8);
  }
  EXPECT_LT((H.apply(c) - c).norm(), 1e-9);
}

TEST(Synth, RenderDeformedAgreesWithTexture) {
  const auto tau = branch_parameterization(0.3, 0.0, Point2(20, 20));
  const Texture tex = [](const Point2& p) { return 0.01 * p.x() + 0.02 * p.y(); };
  const Image img = render_deformed(tex, 40, 40, tau, 1);
  const Point2 q = tau.inverse().apply(Point2(10, 30));
  EXPECT_NEAR(img(10, 30), tex(q), 1e-12);
}

TEST(Synth, TpcaBaselineReproducesRankDependence) {
  const TpcaResult r = tpca_experiment(TpcaConfig{});
  ASSERT_EQ(r.ranks.size(), 3u);
  EXPECT_FALSE(r.success[0]);
  EXPECT_TRUE(r.success[1]);
  EXPECT_FALSE(r.success[2]);
  EXPECT_TRUE(r.tilt_success);
}

TEST(Synth, RobustnessTrialIsDeterministic) {
  const Scene scene;
  const TrialRecord a = robustness_trial("checkerboard", 0.1, 10 * kDeg, 3, scene, {});
  const TrialRecord b = robustness_trial("checkerboard", 0.1, 10 * kDeg, 3, scene, {});
  EXPECT_EQ(a.residual, b.residual);
  EXPECT_TRUE(a.success);
}

TEST(Experiments, ClaimChecksReadTheClaimedRegion) {
  AffineRocConfig cfg;
  cfg.grid.theta = {0.0, 10 * kDeg, 25 * kDeg};
  cfg.grid.t = {0.0, 0.5};
  AffineRocResult r;
  r.success_rate = Matrix::Ones(3, 2);
  r.success_rate(2, 1) = 0.0;  // outside the claimed region
  EXPECT_TRUE(check_claims(r, cfg).front().passed);
  r.success_rate(1, 0) = 0.9;
  EXPECT_FALSE(check_claims(r, cfg).front().passed);
}

TEST(Experiments, ConfigsRejectUnknownKeys) {
  EXPECT_THROW(affine_roc_config_from_json(Json::parse(R"({"bogus": 1})")), Error);
  const AffineRocConfig c = affine_roc_config_from_json(Json::parse(R"({"trials_per_cell": 3})"));
  EXPECT_EQ(c.grid.trials_per_cell, 3);
  EXPECT_THROW(tilt_options_from_json(Json::parse(R"({"lambda_coeff": -1})")), Error);
}

TEST(Experiments, ConfigsKeepExperimentSpecificDefaults) {
  EXPECT_EQ(tpca_config_from_json(Json::object()).scene.square, TpcaConfig{}.scene.square);
}

}  // namespace
}  // namespace tilt
