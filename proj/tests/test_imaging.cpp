#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "tilt/error.hpp"
#include "tilt/image.hpp"
#include "tilt/image_io.hpp"
#include "tilt/synth.hpp"

namespace tilt {
namespace {

namespace fs = std::filesystem;

Image ramp(int w, int h, double a, double b, double c) {
  Matrix px(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) px(y, x) = a + b * x + c * y;
  return Image(px);
}

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tilt_test_" + name);
  fs::create_directories(dir);
  return dir;
}

TEST(Image, RejectsNonFinitePixels) {
  Matrix px = Matrix::Zero(3, 3);
  px(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Image{px}, Error);
}

TEST(Image, AccessIsColumnThenRow) {
  Matrix px = Matrix::Zero(2, 3);
  px(1, 2) = 5.0;
  const Image img(px);
  EXPECT_EQ(img.width(), 3);
  EXPECT_EQ(img.height(), 2);
  EXPECT_EQ(img(2, 1), 5.0);
}

TEST(WindowSpec, FromPixelsIsCellCentred) {
  const WindowSpec w = WindowSpec::from_pixels(10, 20, 8, 6);
  EXPECT_DOUBLE_EQ(w.center.x(), 13.5);
  EXPECT_DOUBLE_EQ(w.center.y(), 22.5);
  EXPECT_EQ(w.rows, 6);
  EXPECT_EQ(w.cols, 8);
  const auto tl = WindowSpec::from_pixels(10, 20, 8, 6);
  const SamplingGrid g = SamplingGrid::from_window(tl);
  EXPECT_NEAR(g.point(0, 0).x(), 10.0, 1e-12);
  EXPECT_NEAR(g.point(0, 0).y(), 20.0, 1e-12);
  EXPECT_NEAR(g.point(5, 7).x(), 17.0, 1e-12);
  EXPECT_NEAR(g.point(5, 7).y(), 25.0, 1e-12);
}

TEST(WindowSpec, RejectsDegenerateSizes) {
  WindowSpec w = WindowSpec::from_pixels(0, 0, 8, 8);
  w.rows = 1;
  EXPECT_THROW(w.validate(), Error);
}

TEST(Warp, IdentityResamplesPixels) {
  const Image img = ramp(30, 20, 0.1, 0.01, 0.02);
  const WindowSpec w = WindowSpec::from_pixels(5, 4, 12, 10);
  const SampledWindow s = warp_window(img, TransformParams::identity(), w);
  ASSERT_EQ(s.values.rows(), 10);
  ASSERT_EQ(s.values.cols(), 12);
  EXPECT_EQ(s.inside_count(), 120);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 12; ++j) EXPECT_NEAR(s.values(i, j), img(5 + j, 4 + i), 1e-12);
}

TEST(Warp, OutsideSamplesAreZeroAndMasked) {
  const Image img(20, 20, 1.0);
  const WindowSpec w = WindowSpec::from_pixels(-5, 0, 10, 10);
  const SampledWindow s = warp_window(img, TransformParams::identity(), w);
  EXPECT_EQ(s.inside_count(), 50);
  EXPECT_EQ(s.values.leftCols(5).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(s.values.rightCols(5).minCoeff(), 1.0);
}

TEST(Gradient, ExactOnRamps) {
  const Gradient g = spatial_gradient(ramp(9, 7, 0.0, 0.3, -0.2));
  EXPECT_NEAR((g.gx.array() - 0.3).abs().maxCoeff(), 0.0, 1e-12);
  EXPECT_NEAR((g.gy.array() + 0.2).abs().maxCoeff(), 0.0, 1e-12);
}

TEST(Gradient, RejectsTinyGrids) {
  EXPECT_THROW(spatial_gradient(Matrix::Zero(2, 5)), Error);
}

TEST(Normalize, UnitFrobeniusAndZeroWindow) {
  Matrix m(2, 2);
  m << 3, 0, 0, 4;
  const Normalized n = normalize_frobenius(m);
  EXPECT_DOUBLE_EQ(n.norm, 5.0);
  EXPECT_NEAR(n.matrix.norm(), 1.0, 1e-15);
  try {
    normalize_frobenius(Matrix::Zero(3, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroWindow);
  }
}

TEST(Blur, PreservesConstantsAndSmooths) {
  const Image flat(16, 12, 0.4);
  EXPECT_NEAR((gaussian_blur(flat, 1.0).pixels().array() - 0.4).abs().maxCoeff(), 0.0, 1e-14);
  const Image board = gen_checkerboard(40, 40, 20);
  const Image blurred = gaussian_blur(board, 1.0);
  EXPECT_LT(blurred.pixels().maxCoeff() - blurred.pixels().minCoeff(),
            board.pixels().maxCoeff() - board.pixels().minCoeff());
}

TEST(Pyramid, LevelSizesAndDepth) {
  const auto levels = gaussian_pyramid(Image(101, 80), 20, 2);
  ASSERT_EQ(levels.size(), 3u);
  EXPECT_EQ(levels[1].width(), 51);
  EXPECT_EQ(levels[1].height(), 40);
  EXPECT_EQ(levels[2].width(), 26);
  EXPECT_EQ(levels[2].height(), 20);
  EXPECT_EQ(gaussian_pyramid(Image(30, 30), 20, 2).size(), 1u);
}

TEST(Rank, ThresholdedRankOfSyntheticPatterns) {
  EXPECT_EQ(thresholded_rank(gen_checkerboard(40, 40, 4).pixels()), 2);
  EXPECT_EQ(thresholded_rank(gen_edge(30, 30).pixels()), 1);
  EXPECT_EQ(thresholded_rank(gen_corner(30, 30).pixels()), 2);
  EXPECT_THROW(thresholded_rank(Matrix::Zero(4, 4)), Error);
}

TEST(ImageIo, PngRoundTripIsExactOnEightBitValues) {
  Matrix px(6, 7);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 7; ++x) px(y, x) = ((x * 37 + y * 11) % 256) / 255.0;
  const fs::path p = temp_dir("png") / "a.png";
  save_png(px, p.string());
  const Image back = load_image(p.string());
  EXPECT_LT((back.pixels() - px).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ImageIo, PgmRoundTrip) {
  Matrix px(4, 5);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 5; ++x) px(y, x) = ((x + 5 * y) * 12) / 255.0;
  const fs::path p = temp_dir("pgm") / "a.pgm";
  save_pgm(Image(px), p.string());
  EXPECT_LT((load_image(p.string()).pixels() - px).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ImageIo, CsvRoundTripIsExact) {
  Matrix m(3, 4);
  m << 1.0 / 3.0, -2e-17, 5.5, 1e300, 0, 1, 2, 3, -0.1, 0.2, -0.3, 0.4;
  const fs::path p = temp_dir("csv") / "m.csv";
  write_csv(m, p.string());
  EXPECT_EQ(read_csv(p.string()), m);
}

TEST(ImageIo, MissingFileIsIoError) {
  try {
    load_image("/nonexistent/none.png");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}

TEST(ImageIo, DisplayRangeRecordsExtremes) {
  Matrix m(1, 3);
  m << -2.0, 0.0, 6.0;
  DisplayRange r;
  const Matrix d = rescale_for_display(m, &r);
  EXPECT_EQ(r.min, -2.0);
  EXPECT_EQ(r.max, 6.0);
  EXPECT_DOUBLE_EQ(d(0, 1), 0.25);
}

}  // namespace
}  // namespace tilt
