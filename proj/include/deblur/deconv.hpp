#pragma once

#include "deblur/image.hpp"
#include "deblur/psf.hpp"

#include <functional>
#include <optional>
#include <variant>

namespace deblur {

// All three methods assume the circular convolution model. Images blurred
// with another boundary rule deconvolve with edge artifacts.

struct WienerParams {
  /// Noise-to-signal power ratio; 0 gives the (pseudo-)inverse filter.
  double nsr = 0.0;
};

/// X = conj(H) B / (|H|^2 + nsr). With nsr == 0, frequencies where
/// |H| < 1e-12 are set to zero instead of dividing.
Image wiener(const Image& blurred, const Kernel& k, const WienerParams& p);

/// nsr = noise_power / max(var(observed) - noise_power, floor).
double estimate_nsr(const Image& observed, double noise_power, double floor = 1e-3);

struct RlParams {
  int iterations = 10;
  /// Denominators below epsilon are replaced by epsilon.
  double epsilon = 1e-12;
};

/// Called after each update with the 1-based iteration number.
using RlObserver = std::function<void(int iteration, const Image& estimate)>;

/// Richardson-Lucy: x <- x .* K^T(b ./ K x), starting from `initial` (or the
/// observation). Negative observation values are clamped to zero on entry.
/// K^T is correlation with the kernel, i.e. convolution with its 180 degree
/// rotation about the kernel center.
Image richardson_lucy(const Image& blurred, const Kernel& k, const RlParams& p,
                      const std::optional<Image>& initial = std::nullopt,
                      const RlObserver& observer = {});

struct FixedLambda {
  double lambda = 0.0;
};

struct SolveForNoisePower {
  double noise_power = 0.0;
  double lambda_lo = 1e-9;
  double lambda_hi = 1e2;
  /// Relative tolerance on the residual power.
  double tolerance = 1e-3;
  int max_iterations = 200;
};

using RegParams = std::variant<FixedLambda, SolveForNoisePower>;

struct RegResult {
  Image image;
  double lambda = 0.0;
  /// mean((k (*) x - b)^2) over pixels, circular convolution.
  double residual_power = 0.0;
};

/// Laplacian operator sized like the PSF, with singleton dimensions
/// promoted to 3.
Grid regularization_operator(const Kernel& k);

/// Constrained least squares: X = conj(H) B / (|H|^2 + lambda |L|^2), L the
/// transfer function of regularization_operator(k). In solve mode lambda is
/// found by bisection on log10(lambda) so that the residual power matches the
/// requested noise power; residual power is non-decreasing in lambda.
RegResult regularized(const Image& blurred, const Kernel& k, const RegParams& p);

/// Residual power of an estimate, computed in the spatial domain.
double residual_power(const Image& estimate, const Image& blurred, const Kernel& k);

}  // namespace deblur
