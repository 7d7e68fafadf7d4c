#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pvol/errors.hpp"

namespace pvol {

/// Physical size of one pixel. Every distance this library reports is in mm,
/// so spacing is mandatory metadata; it is validated, never guessed.
struct PixelSpacing {
  double dx_mm = 0.0;  ///< width of one pixel column
  double dy_mm = 0.0;  ///< height of one pixel row

  void validate() const;
  bool operator==(const PixelSpacing&) const = default;
};

enum class PlaneKind { Axial, Sagittal };

const char* to_string(PlaneKind plane);

/// One binary segmentation frame. Pixels are stored row-major as 0/1 bytes,
/// which keeps area and overlap counting SIMD-friendly.
class FrameMask {
 public:
  FrameMask(int width, int height, PixelSpacing spacing);
  FrameMask(int width, int height, PixelSpacing spacing,
            std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  const PixelSpacing& spacing() const { return spacing_; }

  bool at(int row, int col) const {
    return pixels_[static_cast<std::size_t>(row) * width_ + col] != 0;
  }
  void set(int row, int col, bool foreground);

  const std::uint8_t* row(int r) const {
    return pixels_.data() + static_cast<std::size_t>(r) * width_;
  }
  std::uint8_t* row(int r) {
    return pixels_.data() + static_cast<std::size_t>(r) * width_;
  }
  std::span<const std::uint8_t> pixels() const { return pixels_; }

  std::size_t size() const { return pixels_.size(); }
  bool same_grid(const FrameMask& other) const;

  bool operator==(const FrameMask&) const = default;

 private:
  int width_;
  int height_;
  PixelSpacing spacing_;
  std::vector<std::uint8_t> pixels_;
};

/// Ordered frames of one patient/plane acquisition; the unit of analysis.
/// All frames share one grid; validated at construction.
class Sweep {
 public:
  Sweep(std::string patient_id, PlaneKind plane, std::vector<FrameMask> frames,
        std::string source);

  const std::string& patient_id() const { return patient_id_; }
  PlaneKind plane() const { return plane_; }
  const std::vector<FrameMask>& frames() const { return frames_; }
  const FrameMask& frame(std::size_t i) const { return frames_[i]; }
  std::size_t frame_count() const { return frames_.size(); }
  const std::string& source() const { return source_; }
  const PixelSpacing& spacing() const { return frames_.front().spacing(); }

 private:
  std::string patient_id_;
  PlaneKind plane_;
  std::vector<FrameMask> frames_;
  std::string source_;
};

}  // namespace pvol
