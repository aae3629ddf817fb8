#include "deblur/scenario.hpp"

#include <cmath>
#include <numbers>

namespace deblur {

Image standin_image() {
  constexpr Index kRows = 183;
  constexpr Index kCols = 275;
  constexpr double kPi = std::numbers::pi;
  const double cy = kRows / 2.0;
  const double cx = kCols / 2.0 + 10.0;

  Grid g(kRows, kCols);
  for (Index i = 0; i < kRows; ++i) {
    for (Index j = 0; j < kCols; ++j) {
      const double x = static_cast<double>(j);
      const double y = static_cast<double>(i);
      const double r = std::hypot(x - cx, y - cy);
      const double theta = std::atan2(y - cy, x - cx);
      const double petal = 62.0 + 22.0 * std::cos(5.0 * theta);

      double v = 30.0 + 20.0 * (x / kCols) + 15.0 * std::sin(y / 23.0);
      if (r < petal) v = 150.0 + 70.0 * std::cos(kPi * r / (2.0 * petal));
      if (r < 18.0) v = 60.0;
      if (std::abs(x - 40.0) < 4.0 && y > 100.0) v = 120.0;
      g(i, j) = v;
    }
  }
  return quantize(Image(std::move(g)));
}

}  // namespace deblur
