#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>

namespace deblur {

/// Dense row-major 2D grid. Row-major matches the on-disk pixel order and
/// makes each image row a contiguous span for the row-wise transforms.
template <typename Scalar>
using GridT = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Grid = GridT<double>;
using ComplexGrid = GridT<std::complex<double>>;
using Index = Eigen::Index;

struct Dims {
  Index rows = 0;
  Index cols = 0;

  constexpr Index size() const { return rows * cols; }
  friend constexpr bool operator==(const Dims&, const Dims&) = default;
};

template <typename Derived>
Dims dims_of(const Eigen::DenseBase<Derived>& grid) {
  return {grid.rows(), grid.cols()};
}

std::string to_string(const Dims& d);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Out-of-domain argument (negative density, even window, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Incompatible grid dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Input that makes a statistic or algorithm undefined (single pixel, zero
/// variance, all-zero image).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Target noise power not reachable inside the lambda search range.
class BracketError : public Error {
 public:
  BracketError(const std::string& what, double residual_at_lo, double residual_at_hi)
      : Error(what), residual_at_lo_(residual_at_lo), residual_at_hi_(residual_at_hi) {}

  double residual_at_lo() const { return residual_at_lo_; }
  double residual_at_hi() const { return residual_at_hi_; }

 private:
  double residual_at_lo_;
  double residual_at_hi_;
};

}  // namespace deblur
