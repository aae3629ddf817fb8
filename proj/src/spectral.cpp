#include "deblur/spectral.hpp"

#include "deblur/fft.hpp"

#include <vector>

namespace deblur {

namespace {

enum class Direction { kForward, kInverse };

void transform_in_place(ComplexGrid& g, Direction dir) {
  const Index rows = g.rows();
  const Index cols = g.cols();

  const FftPlan<double> row_plan(static_cast<std::size_t>(cols));
  for (Index r = 0; r < rows; ++r) {
    std::span<std::complex<double>> row(g.data() + r * cols, static_cast<std::size_t>(cols));
    dir == Direction::kForward ? row_plan.forward(row) : row_plan.inverse(row);
  }

  const FftPlan<double> col_plan(static_cast<std::size_t>(rows));
  std::vector<std::complex<double>> column(static_cast<std::size_t>(rows));
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) column[r] = g(r, c);
    dir == Direction::kForward ? col_plan.forward(column) : col_plan.inverse(column);
    for (Index r = 0; r < rows; ++r) g(r, c) = column[r];
  }
}

}  // namespace

ComplexGrid dft2(const ComplexGrid& x) {
  ComplexGrid out = x;
  transform_in_place(out, Direction::kForward);
  return out;
}

ComplexGrid dft2(const Grid& x) { return dft2(ComplexGrid(x.cast<std::complex<double>>())); }

ComplexGrid idft2(const ComplexGrid& x) {
  ComplexGrid out = x;
  transform_in_place(out, Direction::kInverse);
  out /= static_cast<double>(out.size());
  return out;
}

Grid idft2_real(const ComplexGrid& x) { return idft2(x).real(); }

ComplexGrid psf_to_otf(const Grid& kernel, Dims target) {
  if (kernel.rows() > target.rows || kernel.cols() > target.cols) {
    throw ShapeError("kernel " + to_string(dims_of(kernel)) + " larger than target " +
                     to_string(target));
  }
  const Index cr = kernel.rows() / 2;
  const Index cc = kernel.cols() / 2;
  ComplexGrid padded = ComplexGrid::Zero(target.rows, target.cols);
  for (Index r = 0; r < kernel.rows(); ++r) {
    const Index pr = (r - cr + target.rows) % target.rows;
    for (Index c = 0; c < kernel.cols(); ++c) {
      const Index pc = (c - cc + target.cols) % target.cols;
      padded(pr, pc) += kernel(r, c);
    }
  }
  return dft2(padded);
}

ComplexGrid psf_to_otf(const Kernel& kernel, Dims target) {
  return psf_to_otf(kernel.weights(), target);
}

Grid apply_otf(const Grid& x, const ComplexGrid& otf) {
  if (dims_of(x) != dims_of(otf)) {
    throw ShapeError("apply_otf: grid " + to_string(dims_of(x)) + " vs otf " +
                     to_string(dims_of(otf)));
  }
  return idft2_real(dft2(x) * otf);
}

}  // namespace deblur
