#pragma once

#include <filesystem>

#include "impulse/image.hpp"

namespace impulse {

// Formats are chosen by extension: .png and .ppm (binary P6, maxval 255) for
// color images, .png (1-bit grayscale, white = 1) and .pbm (P4, set bit = 1)
// for masks. Failures throw IoError.

ColorImage read_color_image(const std::filesystem::path& path);
void write_color_image(const std::filesystem::path& path, const ColorImage& img);

BinaryMask read_mask(const std::filesystem::path& path);
void write_mask(const std::filesystem::path& path, const BinaryMask& mask);

}  // namespace impulse
