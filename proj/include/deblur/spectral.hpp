#pragma once

#include "deblur/psf.hpp"
#include "deblur/types.hpp"

namespace deblur {

/// Forward 2D DFT, unnormalized. Any grid size is supported.
ComplexGrid dft2(const ComplexGrid& x);
ComplexGrid dft2(const Grid& x);

/// Inverse 2D DFT with the 1 / (rows * cols) factor, so idft2(dft2(x)) == x.
ComplexGrid idft2(const ComplexGrid& x);

/// Real part of idft2(X); the usual last step when X is Hermitian.
Grid idft2_real(const ComplexGrid& x);

/// Optical transfer function: `kernel` zero-padded to `target`, circularly
/// shifted so its center (rows / 2, cols / 2) lands on index (0, 0), then
/// transformed. Pointwise multiplication by the result equals circular
/// convolution with the kernel.
ComplexGrid psf_to_otf(const Grid& kernel, Dims target);
ComplexGrid psf_to_otf(const Kernel& kernel, Dims target);

/// Circular convolution through the frequency domain: real(idft2(dft2(x) .* otf)).
Grid apply_otf(const Grid& x, const ComplexGrid& otf);

}  // namespace deblur
