#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "pvol/ellipse.hpp"
#include "pvol/mask.hpp"

namespace pvol::test {

/// Temporary directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Mask with each pixel independently foreground with probability density.
FrameMask random_mask(std::mt19937_64& rng, int width, int height,
                      PixelSpacing spacing, double density);

/// Like random_mask but guaranteed nonempty.
FrameMask random_nonempty_mask(std::mt19937_64& rng, int width, int height,
                               PixelSpacing spacing, double density);

/// Filled axis-aligned disk, pixel-center inclusion.
FrameMask disk_mask(int width, int height, PixelSpacing spacing,
                    double cx_mm, double cy_mm, double radius_mm);

/// 8-connected morphological dilation by one pixel.
FrameMask dilate8(const FrameMask& mask);

/// Translate foreground by (dr, dc); pixels shifted out of bounds are an
/// error in tests, so callers keep offsets small.
FrameMask translate(const FrameMask& mask, int dr, int dc);

/// Exact points on an ellipse boundary at uniformly spaced angles.
std::vector<std::array<double, 2>> sample_ellipse(const EllipseParams& e,
                                                  int count,
                                                  double phase = 0.0);

double uniform(std::mt19937_64& rng, double lo, double hi);

std::string read_file(const std::filesystem::path& path);

}  // namespace pvol::test
