#include "tilt/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "tilt/error.hpp"

namespace tilt {

namespace {

std::uint8_t to_byte(double v) {
  const double c = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(c * 255.0));
}

Image load_png(const std::string& path) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str())) {
    raise(ErrorCode::IoError, "cannot read PNG '" + path + "': " + img.message);
  }
  img.format = PNG_FORMAT_RGB;
  std::vector<png_byte> buf(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, buf.data(), 0, nullptr)) {
    const std::string msg = img.message;
    png_image_free(&img);
    raise(ErrorCode::IoError, "cannot decode PNG '" + path + "': " + msg);
  }
  const int w = static_cast<int>(img.width);
  const int h = static_cast<int>(img.height);
  Matrix px(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const png_byte* p = &buf[(static_cast<size_t>(y) * w + x) * 3];
      px(y, x) = (0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2]) / 255.0;
    }
  }
  return Image(std::move(px));
}

// Reads the next whitespace-separated PGM header token, skipping comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  char c;
  while (in.get(c)) {
    if (c == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(c);
  }
  return tok;
}

Image load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open '" + path + "'");
  const std::string magic = pgm_token(in);
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(pgm_token(in));
    h = std::stoi(pgm_token(in));
    maxval = std::stoi(pgm_token(in));
  } catch (const std::exception&) {
    raise(ErrorCode::IoError, "malformed PGM header in '" + path + "'");
  }
  if (w < 1 || h < 1 || maxval < 1 || maxval > 65535) {
    raise(ErrorCode::IoError, "unsupported PGM geometry in '" + path + "'");
  }
  Matrix px(h, w);
  if (magic == "P5") {
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> buf(static_cast<size_t>(w) * h * bytes);
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()))) {
      raise(ErrorCode::IoError, "truncated PGM '" + path + "'");
    }
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const size_t i = (static_cast<size_t>(y) * w + x) * bytes;
        const int v = bytes == 2 ? (buf[i] << 8) | buf[i + 1] : buf[i];
        px(y, x) = static_cast<double>(v) / maxval;
      }
    }
  } else if (magic == "P2") {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        int v;
        if (!(in >> v)) raise(ErrorCode::IoError, "truncated PGM '" + path + "'");
        px(y, x) = static_cast<double>(v) / maxval;
      }
    }
  } else {
    raise(ErrorCode::IoError, "'" + path + "' is not a PGM file");
  }
  return Image(std::move(px));
}

}  // namespace

Image load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open '" + path + "'");
  char head[8] = {};
  in.read(head, sizeof head);
  in.close();
  static const unsigned char kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (std::memcmp(head, kPngMagic, 8) == 0) return load_png(path);
  if (head[0] == 'P' && (head[1] == '2' || head[1] == '5')) return load_pgm(path);
  raise(ErrorCode::IoError, "'" + path + "' is neither PNG nor PGM");
}

void save_png(const Matrix& gray, const std::string& path) {
  const int w = static_cast<int>(gray.cols());
  const int h = static_cast<int>(gray.rows());
  std::vector<png_byte> buf(static_cast<size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) buf[static_cast<size_t>(y) * w + x] = to_byte(gray(y, x));
  }
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(w);
  img.height = static_cast<png_uint_32>(h);
  img.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&img, path.c_str(), 0, buf.data(), 0, nullptr)) {
    raise(ErrorCode::IoError, "cannot write PNG '" + path + "': " + img.message);
  }
}

void save_png(const RgbImage& rgb, const std::string& path) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(rgb.width);
  img.height = static_cast<png_uint_32>(rgb.height);
  img.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&img, path.c_str(), 0, rgb.data.data(), 0, nullptr)) {
    raise(ErrorCode::IoError, "cannot write PNG '" + path + "': " + img.message);
  }
}

void save_pgm(const Image& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot write '" + path + "'");
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) out.put(static_cast<char>(to_byte(image(x, y))));
  }
  if (!out) raise(ErrorCode::IoError, "cannot write '" + path + "'");
}

void write_csv(const Matrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::IoError, "cannot write '" + path + "'");
  out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

Matrix read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size()) {
      raise(ErrorCode::IoError, "ragged CSV '" + path + "'");
    }
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix rescale_for_display(const Matrix& m, DisplayRange* range) {
  const double lo = m.size() ? m.minCoeff() : 0.0;
  const double hi = m.size() ? m.maxCoeff() : 0.0;
  if (range) *range = {lo, hi};
  if (!(hi > lo)) return Matrix::Zero(m.rows(), m.cols());
  return (m.array() - lo) / (hi - lo);
}

}  // namespace tilt
