#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "pvol/mask.hpp"

namespace pvol {

/// Decode a binary PGM (P5, maxval 255). Pixel values above 127 become
/// foreground. Spacing comes from the caller; PGM carries none.
FrameMask decode_mask(std::span<const std::uint8_t> bytes,
                      PixelSpacing spacing);

/// Encode as P5 with foreground 255, background 0.
std::vector<std::uint8_t> encode_mask(const FrameMask& mask);

FrameMask read_mask_file(const std::filesystem::path& path,
                         PixelSpacing spacing);
void write_mask_file(const std::filesystem::path& path, const FrameMask& mask);

}  // namespace pvol
