#pragma once

#include <array>
#include <string>
#include <vector>

#include "tilt/image_io.hpp"
#include "tilt/transform.hpp"

namespace tilt {

struct Color {
  std::uint8_t r = 0, g = 0, b = 0;
};

RgbImage to_rgb(const Matrix& gray);
void draw_line(RgbImage& img, const Point2& a, const Point2& b, Color c);
void draw_quad(RgbImage& img, const std::array<Point2, 4>& corners, Color c);
/// Window corners mapped through tau (top-left, top-right, bottom-right, bottom-left).
std::array<Point2, 4> mapped_corners(const TransformParams& tau, const std::array<Point2, 4>& corners);

/// Each matrix cell becomes a `cell` x `cell` block; 0 black, 1 white.
RgbImage heat_map(const Matrix& rates, int cell = 16);

struct Curve {
  std::vector<double> x;
  std::vector<double> y;
  Color color;
};

/// Polylines on a white canvas with a light frame; axis ranges are given.
RgbImage plot_curves(const std::vector<Curve>& curves, double x_min, double x_max, double y_min,
                     double y_max, int width = 480, int height = 360);

}  // namespace tilt
