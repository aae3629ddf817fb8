#include "deblur/image.hpp"

#include <cmath>
#include <limits>

namespace deblur {

std::string to_string(const Dims& d) {
  return std::to_string(d.rows) + "x" + std::to_string(d.cols);
}

namespace {

void check_valid(const Grid& g) {
  if (g.rows() < 1 || g.cols() < 1) {
    throw ShapeError("image must be at least 1x1, got " + to_string(dims_of(g)));
  }
  if (!g.isFinite().all()) throw ParameterError("image contains non-finite pixel values");
}

}  // namespace

Image::Image(Index rows, Index cols, double fill) : pixels_() {
  if (rows < 1 || cols < 1) {
    throw ShapeError("image must be at least 1x1, got " + to_string({rows, cols}));
  }
  if (!std::isfinite(fill)) throw ParameterError("image fill value must be finite");
  pixels_ = Grid::Constant(rows, cols, fill);
}

Image::Image(Grid pixels) : pixels_(std::move(pixels)) { check_valid(pixels_); }

Image Image::from_row_major(Index rows, Index cols, std::span<const double> values) {
  if (rows < 1 || cols < 1 || static_cast<Index>(values.size()) != rows * cols) {
    throw ShapeError("pixel count " + std::to_string(values.size()) + " does not match " +
                     to_string({rows, cols}));
  }
  Grid g(rows, cols);
  std::copy(values.begin(), values.end(), g.data());
  return Image(std::move(g));
}

Image clamp(const Image& img, double lo, double hi) {
  return Image(img.pixels().max(lo).min(hi).eval());
}

Image quantize(const Image& img) {
  // std::round rounds half away from zero.
  return Image(img.pixels().max(0.0).min(255.0).unaryExpr([](double v) { return std::round(v); }));
}

double mean(const Image& img) { return mean(img.pixels()); }

double stddev(const Image& img) { return stddev(img.pixels()); }

double snr(const Image& img) {
  const double s = stddev(img);
  if (s == 0.0) throw DegenerateInputError("snr undefined: standard deviation is zero");
  return mean(img) / s;
}

double rmse(const Image& a, const Image& b) { return rmse(a.pixels(), b.pixels()); }

StatsRow compute_stats(const Image& img) {
  StatsRow row;
  row.mean = mean(img);
  row.std = stddev(img);
  row.snr = row.std > 0.0 ? row.mean / row.std : std::numeric_limits<double>::infinity();
  return row;
}

StatsRow compute_stats(const Image& img, const Image& reference) {
  StatsRow row = compute_stats(img);
  row.rmse = rmse(img, reference);
  return row;
}

}  // namespace deblur
