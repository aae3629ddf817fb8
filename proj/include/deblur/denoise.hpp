#pragma once

#include "deblur/image.hpp"

namespace deblur {

/// Two-stage adaptive median filter for impulse noise.
///
/// Per pixel, starting with a 3x3 window:
///   A: if min < med < max go to B; otherwise grow the window by 2 and
///      retry, and once `max_window` is exhausted output med.
///   B: output the pixel itself if min < z < max, else med.
/// Windows read past the border with replicate extension, so every window
/// holds exactly w*w samples.
///
/// `max_window` must be odd, >= 3 and no larger than the smaller image side.
Image adaptive_median(const Image& img, int max_window);

}  // namespace deblur
