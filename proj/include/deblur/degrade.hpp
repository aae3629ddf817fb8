#pragma once

#include "deblur/image.hpp"
#include "deblur/psf.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace deblur {

/// How the image is extended past its edges during spatial convolution.
enum class BoundaryMode { kCircular, kReplicate, kSymmetric, kZero };

BoundaryMode parse_boundary(std::string_view name);
std::string_view to_string(BoundaryMode mode);

/// SplitMix64 (Steele, Lea & Flood 2014; public-domain reference by
/// Sebastiano Vigna). The state advances by 0x9E3779B97F4A7C15 and each
/// output is the state passed through the variant-13 finalizer. Uniform
/// doubles take the top 53 bits: (x >> 11) * 2^-53.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct NoiseSpec {
  double density = 0.0;
  std::uint64_t seed = 0;
  double salt_value = 255.0;
  double pepper_value = 0.0;

  void validate() const;
};

/// Per-pixel corruption decision: 0 untouched, +1 salt, -1 pepper.
using ImpulseMap = GridT<std::int8_t>;

/// Corruption decisions in row-major pixel order. Each pixel draws one
/// uniform u; it is corrupted iff u < density, in which case a second draw
/// v picks salt (v < 0.5) or pepper. This draw order is part of the
/// reproducibility contract.
ImpulseMap impulse_map(Dims dims, const NoiseSpec& spec);

Image add_salt_pepper(const Image& img, const NoiseSpec& spec);

/// out(i, j) = sum_{a,b} k(a, b) * img(i - (a - ca), j - (b - cb)) with
/// (ca, cb) the kernel center and out-of-range reads resolved by `mode`.
Image convolve(const Image& img, const Kernel& k, BoundaryMode mode);

/// add_salt_pepper(convolve(img, k, mode), spec).
Image degrade(const Image& img, const Kernel& k, BoundaryMode mode, const NoiseSpec& spec);

}  // namespace deblur
