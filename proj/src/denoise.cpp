#include "deblur/denoise.hpp"

#include <algorithm>
#include <vector>

namespace deblur {

Image adaptive_median(const Image& img, int max_window) {
  if (max_window < 3 || max_window % 2 == 0) {
    throw ParameterError("adaptive_median: max window must be an odd integer >= 3, got " +
                         std::to_string(max_window));
  }
  if (max_window > std::min(img.rows(), img.cols())) {
    throw ParameterError("adaptive_median: max window " + std::to_string(max_window) +
                         " exceeds image " + to_string(img.dims()));
  }

  const Grid& src = img.pixels();
  const Index rows = img.rows();
  const Index cols = img.cols();
  Grid out(rows, cols);
  std::vector<double> window;
  window.reserve(static_cast<std::size_t>(max_window) * max_window);

  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const double z = src(i, j);
      double result = z;
      for (int w = 3; w <= max_window; w += 2) {
        const Index h = w / 2;
        window.clear();
        for (Index di = -h; di <= h; ++di) {
          const Index r = std::clamp<Index>(i + di, 0, rows - 1);
          for (Index dj = -h; dj <= h; ++dj) {
            window.push_back(src(r, std::clamp<Index>(j + dj, 0, cols - 1)));
          }
        }
        const auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
        std::nth_element(window.begin(), mid, window.end());
        const double med = *mid;
        const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
        if (*lo < med && med < *hi) {
          result = (*lo < z && z < *hi) ? z : med;
          break;
        }
        result = med;
      }
      out(i, j) = result;
    }
  }
  return Image(std::move(out));
}

}  // namespace deblur
