#pragma once

#include "deblur/types.hpp"

#include <cmath>
#include <optional>
#include <span>

namespace deblur {

/// Grayscale image on the 0-255 scale, stored as doubles.
///
/// Values may leave [0, 255] in intermediate results; quantization only
/// happens in quantize() and at save time. Every pixel is finite and the
/// grid is never empty. Instances are immutable.
class Image {
 public:
  Image(Index rows, Index cols, double fill = 0.0);
  explicit Image(Grid pixels);

  static Image from_row_major(Index rows, Index cols, std::span<const double> values);

  Index rows() const { return pixels_.rows(); }
  Index cols() const { return pixels_.cols(); }
  Dims dims() const { return {rows(), cols()}; }
  Index size() const { return pixels_.size(); }

  double operator()(Index r, Index c) const { return pixels_(r, c); }
  const Grid& pixels() const { return pixels_; }
  std::span<const double> data() const {
    return {pixels_.data(), static_cast<std::size_t>(pixels_.size())};
  }

  friend bool operator==(const Image& a, const Image& b) {
    return a.dims() == b.dims() && (a.pixels_ == b.pixels_).all();
  }

 private:
  Grid pixels_;
};

/// Clamp every pixel into [lo, hi].
Image clamp(const Image& img, double lo = 0.0, double hi = 255.0);

/// Clamp to [0, 255] and round half away from zero: exactly what an 8-bit
/// save followed by a load produces.
Image quantize(const Image& img);

// Statistics follow the table schema mean / std / mean-over-std / rmse.
// Standard deviation uses the N-1 (sample) normalization.

template <typename Derived>
double mean(const Eigen::ArrayBase<Derived>& x) {
  return x.mean();
}

template <typename Derived>
double stddev(const Eigen::ArrayBase<Derived>& x) {
  if (x.size() < 2) throw DegenerateInputError("stddev needs at least two pixels");
  const double mu = x.mean();
  return std::sqrt((x - mu).square().sum() / static_cast<double>(x.size() - 1));
}

template <typename DerivedA, typename DerivedB>
double rmse(const Eigen::ArrayBase<DerivedA>& a, const Eigen::ArrayBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("rmse: dimension mismatch " + to_string(dims_of(a)) + " vs " +
                     to_string(dims_of(b)));
  }
  return std::sqrt((a - b).square().mean());
}

double mean(const Image& img);
double stddev(const Image& img);
double snr(const Image& img);
double rmse(const Image& a, const Image& b);

struct StatsRow {
  double mean = 0.0;
  double std = 0.0;
  /// mean / std; +inf when std is zero (reporting sentinel, see snr()).
  double snr = 0.0;
  std::optional<double> rmse;
};

StatsRow compute_stats(const Image& img);
StatsRow compute_stats(const Image& img, const Image& reference);

}  // namespace deblur
