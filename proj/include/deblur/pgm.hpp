#pragma once

#include "deblur/image.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace deblur {

// Binary PGM (P5, maxval 255). Saving clamps to [0, 255] and rounds half
// away from zero, so save -> load -> save is byte-stable.

Image decode_pgm(std::string_view bytes);
std::string encode_pgm(const Image& img);

Image load_image(const std::filesystem::path& path);
void save_image(const Image& img, const std::filesystem::path& path);

}  // namespace deblur
