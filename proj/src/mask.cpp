#include "pvol/mask.hpp"

#include <cmath>

#include "pvol/kernels.hpp"

namespace pvol {

void PixelSpacing::validate() const {
  if (!(std::isfinite(dx_mm) && std::isfinite(dy_mm)))
    throw ValidationError("pixel spacing must be finite");
  if (!(dx_mm > 0.0 && dy_mm > 0.0))
    throw ValidationError("pixel spacing must be positive");
}

const char* to_string(PlaneKind plane) {
  return plane == PlaneKind::Axial ? "axial" : "sagittal";
}

FrameMask::FrameMask(int width, int height, PixelSpacing spacing)
    : width_(width), height_(height), spacing_(spacing) {
  if (width < 1 || height < 1)
    throw ValidationError("mask dimensions must be at least 1x1");
  spacing.validate();
  pixels_.assign(static_cast<std::size_t>(width) * height, 0);
}

FrameMask::FrameMask(int width, int height, PixelSpacing spacing,
                     std::vector<std::uint8_t> pixels)
    : FrameMask(width, height, spacing) {
  if (pixels.size() != pixels_.size())
    throw ValidationError("mask payload size does not match dimensions");
  pixels_ = std::move(pixels);
  for (auto& p : pixels_) p = p ? 1 : 0;
}

void FrameMask::set(int row, int col, bool foreground) {
  if (row < 0 || row >= height_ || col < 0 || col >= width_)
    throw ValidationError("pixel coordinate out of bounds");
  pixels_[static_cast<std::size_t>(row) * width_ + col] = foreground ? 1 : 0;
}

bool FrameMask::same_grid(const FrameMask& other) const {
  return width_ == other.width_ && height_ == other.height_ &&
         spacing_ == other.spacing_;
}

Sweep::Sweep(std::string patient_id, PlaneKind plane,
             std::vector<FrameMask> frames, std::string source)
    : patient_id_(std::move(patient_id)),
      plane_(plane),
      frames_(std::move(frames)),
      source_(std::move(source)) {
  if (frames_.empty()) throw ValidationError("sweep has no frames");
  for (std::size_t i = 1; i < frames_.size(); ++i) {
    if (!frames_[i].same_grid(frames_[0]))
      throw ValidationError("sweep frame " + std::to_string(i) +
                            " disagrees on dimensions or spacing");
  }
}

}  // namespace pvol
