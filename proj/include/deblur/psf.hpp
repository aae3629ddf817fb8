#pragma once

#include "deblur/types.hpp"

#include <iosfwd>

namespace deblur {

/// Small 2D grid of non-negative, finite weights (a point spread function).
/// The kernel's center is (rows / 2, cols / 2) with integer division.
class Kernel {
 public:
  explicit Kernel(Grid weights);

  Index rows() const { return weights_.rows(); }
  Index cols() const { return weights_.cols(); }
  Dims dims() const { return {rows(), cols()}; }
  double operator()(Index r, Index c) const { return weights_(r, c); }
  const Grid& weights() const { return weights_; }
  double sum() const { return weights_.sum(); }

  static Kernel delta() { return Kernel(Grid::Ones(1, 1)); }

 private:
  Grid weights_;
};

/// Uniform linear motion of `length_px` pixels at `angle_deg` degrees
/// counter-clockwise from the horizontal.
///
/// The kernel is (2*ceil(h*|sin|) + 1) x (2*ceil(h*|cos|) + 1) with
/// h = (length_px - 1) / 2. Each cell holds max(0, 1 - d), where d is the
/// distance from the cell center to the segment joining the two outermost
/// cell centers, normalized to unit sum. This is the coverage of a
/// unit-width stroke, so the result is invariant under 180 degree rotation
/// and mirrors vertically when the angle is negated.
Kernel motion_psf(double length_px, double angle_deg);

/// size x size samples of exp(-(di^2 + dj^2) / (2 sigma^2)), unit sum.
Kernel gaussian_psf(int size, double sigma);

/// The five-point Laplacian stencil [0 1 0; 1 -4 1; 0 1 0] centered in a
/// rows x cols zero grid. Signed; sums to zero.
Grid laplacian_operator(Index rows, Index cols);

Grid rotate180(const Grid& g);

// Plain-text grid: first line "rows cols", then one line of weights per row.
void write_grid_text(std::ostream& out, const Grid& g);
Grid read_grid_text(std::istream& in);

}  // namespace deblur
