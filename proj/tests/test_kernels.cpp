#include <gtest/gtest.h>

#include <random>

#include "tilt/kernels.hpp"

namespace tilt {
namespace {

Matrix random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = u(rng);
  return m;
}

std::vector<Point2> canonical_points(int n, std::uint64_t seed, double spread = 30.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<Point2> pts(n);
  for (auto& p : pts) p = Point2(u(rng), u(rng));
  return pts;
}

TransformParams some_affine() {
  Eigen::Matrix2d A;
  A << 1.1, 0.2, -0.15, 0.9;
  return TransformParams::affine(A, Point2(40.0, 35.0));
}

TransformParams some_projective() {
  Eigen::Matrix3d H;
  H << 1.05, 0.1, 40.0, -0.05, 0.95, 35.0, 1e-3, -5e-4, 1.0;
  return TransformParams::projective(H);
}

TEST(Kernels, MapPointsMatchesReference) {
  const auto pts = canonical_points(2000, 1);
  for (const auto& tau : {some_affine(), some_projective()}) {
    std::vector<Point2> a, b;
    ASSERT_TRUE(kernels::map_points(tau, pts, a));
    ASSERT_TRUE(kernels::reference::map_points(tau, pts, b));
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  }
}

TEST(Kernels, SamplePointsMatchesReference) {
  const Matrix px = random_matrix(70, 90, 2);
  std::vector<Point2> mapped;
  ASSERT_TRUE(kernels::map_points(some_affine(), canonical_points(3000, 3, 60.0), mapped));
  Matrix va(60, 50), vb(60, 50);
  Mask ma(60, 50), mb(60, 50);
  kernels::sample_points(px, mapped, va, ma);
  kernels::reference::sample_points(px, mapped, vb, mb);
  EXPECT_EQ(va, vb);
  EXPECT_EQ(ma, mb);
  EXPECT_GT(ma.count(), 0);
  EXPECT_LT(ma.count(), ma.size());
}

TEST(Kernels, BilinearReproducesLatticeAndPlanes) {
  Matrix px(5, 6);
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 6; ++x) px(y, x) = 2.0 + 0.5 * x - 0.25 * y;
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 6; ++x) EXPECT_DOUBLE_EQ(kernels::bilinear(px, x, y).value, px(y, x));
  const Sample s = kernels::bilinear(px, 2.3, 3.7);
  EXPECT_TRUE(s.inside);
  EXPECT_NEAR(s.value, 2.0 + 0.5 * 2.3 - 0.25 * 3.7, 1e-12);
  EXPECT_FALSE(kernels::bilinear(px, -0.01, 1.0).inside);
  EXPECT_FALSE(kernels::bilinear(px, 1.0, 4.01).inside);
}

TEST(Kernels, SeparableBlurMatchesReference) {
  const Matrix px = random_matrix(41, 37, 4);
  const auto taps = kernels::gaussian_taps(0.8);
  const Matrix a = kernels::separable_blur(px, taps);
  const Matrix b = kernels::reference::separable_blur(px, taps);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Kernels, GaussianTapsAreNormalisedAndSymmetric) {
  const auto taps = kernels::gaussian_taps(1.3);
  EXPECT_NEAR(taps[0] + taps[1] + taps[2] + taps[3] + taps[4], 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(taps[0], taps[4]);
  EXPECT_DOUBLE_EQ(taps[1], taps[3]);
  EXPECT_GT(taps[2], taps[1]);
}

TEST(Kernels, CentralDifferencesMatchReference) {
  const Matrix g = random_matrix(33, 29, 5);
  const Gradient a = kernels::central_differences(g);
  const Gradient b = kernels::reference::central_differences(g);
  EXPECT_EQ(a.gx, b.gx);
  EXPECT_EQ(a.gy, b.gy);
}

TEST(Kernels, SoftThresholdMatchesReference) {
  Matrix a = random_matrix(50, 40, 6);
  Matrix b = a;
  kernels::soft_threshold(a, 0.3);
  kernels::reference::soft_threshold(b, 0.3);
  EXPECT_EQ(a, b);
  EXPECT_LE(a.cwiseAbs().maxCoeff(), 0.7 + 1e-15);
}

TEST(Kernels, JacobianRowsMatchReference) {
  const Matrix gx = random_matrix(80, 80, 7);
  const Matrix gy = random_matrix(80, 80, 8);
  const auto pts = canonical_points(1500, 9);
  for (const auto& tau : {some_affine(), some_projective()}) {
    Matrix a(1500, tau.size()), b(1500, tau.size());
    kernels::jacobian_rows(gx, gy, tau, pts, a);
    kernels::reference::jacobian_rows(gx, gy, tau, pts, b);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-13);
  }
}

}  // namespace
}  // namespace tilt
