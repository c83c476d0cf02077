#pragma once

#include <filesystem>

#include "scseg/image.hpp"

namespace scseg {

// Reads PGM/PPM (P2, P3, P5, P6; 8- and 16-bit samples, rescaled to [0, 255])
// and PNG (any color type; 16-bit stripped). Color inputs are converted to
// grayscale with BT.601 luma weights. Throws std::runtime_error on
// unsupported, corrupt, or zero-dimension files.
GrayImage load_image(const std::filesystem::path& path);

// Writes 8-bit grayscale, rounding and clamping to [0, 255]. The format is
// picked from the extension: .pgm (binary P5) or .png.
void save_image(const GrayImage& image, const std::filesystem::path& path);

// Masks are stored as binary images: background = 0, foreground = 255.
void save_mask(const LabelMask& mask, const std::filesystem::path& path);

// Loads a mask from any supported image. Files with values {0, x} load
// nonzero as foreground; anything else warns once on stderr and thresholds
// at >= 128.
LabelMask load_mask(const std::filesystem::path& path);

}  // namespace scseg
