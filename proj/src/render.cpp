#include "tilt/render.hpp"

#include <algorithm>
#include <cmath>

namespace tilt {

RgbImage to_rgb(const Matrix& gray) {
  RgbImage img(static_cast<int>(gray.cols()), static_cast<int>(gray.rows()));
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const auto v = static_cast<std::uint8_t>(std::lround(std::clamp(gray(y, x), 0.0, 1.0) * 255.0));
      std::uint8_t* p = img.at(x, y);
      p[0] = p[1] = p[2] = v;
    }
  }
  return img;
}

void draw_line(RgbImage& img, const Point2& a, const Point2& b, Color c) {
  const double len = (b - a).norm();
  const int steps = std::max(1, static_cast<int>(std::ceil(len * 2.0)));
  for (int s = 0; s <= steps; ++s) {
    const Point2 p = a + (b - a) * (static_cast<double>(s) / steps);
    const long x = std::lround(p.x());
    const long y = std::lround(p.y());
    if (x < 0 || y < 0 || x >= img.width || y >= img.height) continue;
    std::uint8_t* q = img.at(static_cast<int>(x), static_cast<int>(y));
    q[0] = c.r;
    q[1] = c.g;
    q[2] = c.b;
  }
}

void draw_quad(RgbImage& img, const std::array<Point2, 4>& corners, Color c) {
  for (size_t k = 0; k < 4; ++k) draw_line(img, corners[k], corners[(k + 1) % 4], c);
}

std::array<Point2, 4> mapped_corners(const TransformParams& tau, const std::array<Point2, 4>& corners) {
  std::array<Point2, 4> out;
  for (size_t k = 0; k < 4; ++k) out[k] = tau.apply(corners[k]);
  return out;
}

RgbImage heat_map(const Matrix& rates, int cell) {
  RgbImage img(static_cast<int>(rates.cols()) * cell, static_cast<int>(rates.rows()) * cell);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double v = std::clamp(rates(y / cell, x / cell), 0.0, 1.0);
      std::uint8_t* p = img.at(x, y);
      p[0] = p[1] = p[2] = static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
  }
  return img;
}

RgbImage plot_curves(const std::vector<Curve>& curves, double x_min, double x_max, double y_min,
                     double y_max, int width, int height) {
  RgbImage img(width, height);
  std::fill(img.data.begin(), img.data.end(), std::uint8_t{255});
  const int margin = 24;
  auto to_px = [&](double x, double y) {
    return Point2(margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin),
                  height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin));
  };
  const Color frame{160, 160, 160};
  draw_quad(img, {to_px(x_min, y_max), to_px(x_max, y_max), to_px(x_max, y_min), to_px(x_min, y_min)},
            frame);
  for (const Curve& c : curves) {
    for (size_t i = 1; i < c.x.size() && i < c.y.size(); ++i) {
      draw_line(img, to_px(c.x[i - 1], c.y[i - 1]), to_px(c.x[i], c.y[i]), c.color);
    }
  }
  return img;
}

}  // namespace tilt
