#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tilt/image.hpp"

namespace tilt {

/// 8-bit RGB raster, row-major, 3 bytes per pixel.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h * 3, 0) {}
  std::uint8_t* at(int x, int y) { return &data[(static_cast<size_t>(y) * width + x) * 3]; }
};

/// Loads PNG or PGM (P2/P5), detected from the file header. Color is
/// reduced with luma 0.299 R + 0.587 G + 0.114 B; intensities are divided by
/// the maximum code value (255 for 8-bit).
Image load_image(const std::string& path);

/// Writes a grayscale PNG; values are clamped to [0, 1] and scaled by 255.
void save_png(const Matrix& gray, const std::string& path);
void save_png(const RgbImage& rgb, const std::string& path);
void save_pgm(const Image& image, const std::string& path);

/// Full-precision CSV, one matrix row per line.
void write_csv(const Matrix& m, const std::string& path);
Matrix read_csv(const std::string& path);

/// Affine map of [min, max] onto [0, 1] (a constant matrix maps to 0).
struct DisplayRange {
  double min = 0.0;
  double max = 0.0;
};
Matrix rescale_for_display(const Matrix& m, DisplayRange* range = nullptr);

}  // namespace tilt
