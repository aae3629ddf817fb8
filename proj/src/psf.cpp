#include "deblur/psf.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace deblur {

Kernel::Kernel(Grid weights) : weights_(std::move(weights)) {
  if (weights_.rows() < 1 || weights_.cols() < 1) throw ShapeError("kernel must be at least 1x1");
  if (!weights_.isFinite().all()) throw ParameterError("kernel weights must be finite");
  if ((weights_ < 0.0).any()) throw ParameterError("kernel weights must be non-negative");
  if (weights_.sum() <= 0.0) throw ParameterError("kernel weights must not all be zero");
}

namespace {

// Snap the tiny residues of cos(90 deg) etc. to exact zeros.
double snap(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

// Half extent of the footprint along one axis; the epsilon keeps exact
// integer products (h*|sin| == 2.0) from rounding up to the next cell.
Index half_extent(double projected) { return static_cast<Index>(std::ceil(projected - 1e-9)); }

}  // namespace

Kernel motion_psf(double length_px, double angle_deg) {
  if (!(length_px >= 1.0) || !std::isfinite(length_px)) {
    throw ParameterError("motion_psf: length must be >= 1 pixel");
  }
  if (!std::isfinite(angle_deg)) throw ParameterError("motion_psf: angle must be finite");

  // Reduce to [-90, 90): theta and theta + 180 describe the same segment.
  // Negative angles are built as the row flip of -theta so mirroring is
  // bit-exact, normalization included.
  double theta = std::fmod(angle_deg, 180.0);
  if (theta >= 90.0) theta -= 180.0;
  if (theta < -90.0) theta += 180.0;
  if (theta < 0.0 && theta > -90.0) {
    return Kernel(Grid(motion_psf(length_px, -theta).weights().colwise().reverse()));
  }
  const double rad = theta * std::numbers::pi / 180.0;
  const double ux = snap(std::cos(rad));
  const double uy = snap(std::sin(rad));

  const double half = (length_px - 1.0) / 2.0;
  const Index hr = half_extent(half * std::abs(uy));
  const Index hc = half_extent(half * std::abs(ux));

  Grid w(2 * hr + 1, 2 * hc + 1);
  for (Index r = 0; r < w.rows(); ++r) {
    // Rows grow downward; the geometric y axis points up.
    const double y = static_cast<double>(hr - r);
    for (Index c = 0; c < w.cols(); ++c) {
      const double x = static_cast<double>(c - hc);
      const double along = std::clamp(x * ux + y * uy, -half, half);
      const double d = std::hypot(x - along * ux, y - along * uy);
      w(r, c) = std::max(0.0, 1.0 - d);
    }
  }
  w /= w.sum();
  return Kernel(std::move(w));
}

Kernel gaussian_psf(int size, double sigma) {
  if (size < 1 || size % 2 == 0) throw ParameterError("gaussian_psf: size must be a positive odd integer");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ParameterError("gaussian_psf: sigma must be positive");

  const int c = size / 2;
  Grid w(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      const double di = i - c;
      const double dj = j - c;
      w(i, j) = std::exp(-(di * di + dj * dj) / (2.0 * sigma * sigma));
    }
  }
  w /= w.sum();
  return Kernel(std::move(w));
}

Grid laplacian_operator(Index rows, Index cols) {
  if (rows < 3 || cols < 3) {
    throw ParameterError("laplacian_operator: dimensions must be at least 3x3, got " +
                         to_string({rows, cols}));
  }
  Grid g = Grid::Zero(rows, cols);
  const Index r = rows / 2;
  const Index c = cols / 2;
  g(r, c) = -4.0;
  g(r - 1, c) = g(r + 1, c) = g(r, c - 1) = g(r, c + 1) = 1.0;
  return g;
}

Grid rotate180(const Grid& g) { return g.reverse(); }

void write_grid_text(std::ostream& out, const Grid& g) {
  out << g.rows() << ' ' << g.cols() << '\n';
  std::ostringstream line;
  line << std::setprecision(17);
  for (Index r = 0; r < g.rows(); ++r) {
    line.str({});
    for (Index c = 0; c < g.cols(); ++c) {
      if (c) line << ' ';
      line << g(r, c);
    }
    out << line.str() << '\n';
  }
}

Grid read_grid_text(std::istream& in) {
  Index rows = 0;
  Index cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1) {
    throw IoError("kernel text: malformed 'rows cols' header");
  }
  Grid g(rows, cols);
  for (Index i = 0; i < g.size(); ++i) {
    if (!(in >> g.data()[i])) {
      throw IoError("kernel text: expected " + std::to_string(g.size()) + " weights, read " +
                    std::to_string(i));
    }
  }
  return g;
}

}  // namespace deblur
