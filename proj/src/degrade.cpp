#include "deblur/degrade.hpp"

#include <cmath>
#include <optional>

namespace deblur {

BoundaryMode parse_boundary(std::string_view name) {
  if (name == "circular") return BoundaryMode::kCircular;
  if (name == "replicate") return BoundaryMode::kReplicate;
  if (name == "symmetric") return BoundaryMode::kSymmetric;
  if (name == "zero") return BoundaryMode::kZero;
  throw ParameterError("unknown boundary mode '" + std::string(name) +
                       "' (expected circular, replicate, symmetric or zero)");
}

std::string_view to_string(BoundaryMode mode) {
  switch (mode) {
    case BoundaryMode::kCircular:
      return "circular";
    case BoundaryMode::kReplicate:
      return "replicate";
    case BoundaryMode::kSymmetric:
      return "symmetric";
    case BoundaryMode::kZero:
      return "zero";
  }
  return "?";
}

void NoiseSpec::validate() const {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw ParameterError("noise density must lie in [0, 1]");
  }
  if (!std::isfinite(salt_value) || !std::isfinite(pepper_value)) {
    throw ParameterError("salt and pepper values must be finite");
  }
}

ImpulseMap impulse_map(Dims dims, const NoiseSpec& spec) {
  spec.validate();
  ImpulseMap map = ImpulseMap::Zero(dims.rows, dims.cols);
  SplitMix64 rng(spec.seed);
  for (Index i = 0; i < map.size(); ++i) {
    if (rng.next_unit() < spec.density) {
      map.data()[i] = rng.next_unit() < 0.5 ? 1 : -1;
    }
  }
  return map;
}

Image add_salt_pepper(const Image& img, const NoiseSpec& spec) {
  const ImpulseMap map = impulse_map(img.dims(), spec);
  Grid out = img.pixels();
  for (Index i = 0; i < out.size(); ++i) {
    if (map.data()[i] > 0) {
      out.data()[i] = spec.salt_value;
    } else if (map.data()[i] < 0) {
      out.data()[i] = spec.pepper_value;
    }
  }
  return Image(std::move(out));
}

namespace {

// Maps an out-of-range coordinate back into [0, n), or nullopt for zero
// padding.
std::optional<Index> resolve(Index i, Index n, BoundaryMode mode) {
  if (i >= 0 && i < n) return i;
  switch (mode) {
    case BoundaryMode::kCircular:
      return ((i % n) + n) % n;
    case BoundaryMode::kReplicate:
      return i < 0 ? Index{0} : n - 1;
    case BoundaryMode::kSymmetric: {
      // Half-sample symmetric: ... 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...
      const Index period = 2 * n;
      Index m = ((i % period) + period) % period;
      return m < n ? m : period - 1 - m;
    }
    case BoundaryMode::kZero:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

Image convolve(const Image& img, const Kernel& k, BoundaryMode mode) {
  if (k.rows() > img.rows() || k.cols() > img.cols()) {
    throw ShapeError("convolve: kernel " + to_string(k.dims()) + " larger than image " +
                     to_string(img.dims()));
  }
  const Grid& src = img.pixels();
  const Index rows = img.rows();
  const Index cols = img.cols();
  const Index cr = k.rows() / 2;
  const Index cc = k.cols() / 2;

  Grid out = Grid::Zero(rows, cols);
  for (Index a = 0; a < k.rows(); ++a) {
    for (Index b = 0; b < k.cols(); ++b) {
      const double w = k(a, b);
      if (w == 0.0) continue;
      const Index dr = a - cr;
      const Index dc = b - cc;
      for (Index i = 0; i < rows; ++i) {
        const auto si = resolve(i - dr, rows, mode);
        if (!si) continue;
        for (Index j = 0; j < cols; ++j) {
          const auto sj = resolve(j - dc, cols, mode);
          if (!sj) continue;
          out(i, j) += w * src(*si, *sj);
        }
      }
    }
  }
  return Image(std::move(out));
}

Image degrade(const Image& img, const Kernel& k, BoundaryMode mode, const NoiseSpec& spec) {
  return add_salt_pepper(convolve(img, k, mode), spec);
}

}  // namespace deblur
