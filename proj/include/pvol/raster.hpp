#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "pvol/mask.hpp"

namespace pvol {

/// Closed outer boundary of a mask component, traced pixel by pixel and
/// reported at pixel centers in physical coordinates (x = col * dx_mm,
/// y = row * dy_mm). Thin structures yield a down-and-back walk.
struct Contour {
  std::vector<std::array<double, 2>> points_mm;
  bool closed = true;
};

/// Foreground pixel count.
std::size_t area_px(const FrameMask& mask);

/// Number of 8-connected foreground components.
int component_count(const FrameMask& mask);

/// Size of the largest 8-connected component (0 for an empty mask).
std::size_t largest_component_area(const FrameMask& mask);

/// Keep only the largest 8-connected component; ties go to the component
/// whose seed pixel is smallest in (row, col) order. Empty in, empty out.
FrameMask largest_component(const FrameMask& mask);

/// Foreground pixels with at least one background 4-neighbour
/// (out-of-image counts as background).
FrameMask boundary_mask(const FrameMask& mask);

/// Moore-neighbour trace (8-connected foreground, 4-connected background) of
/// the largest component's outer boundary. Requires >= 3 foreground pixels in
/// that component.
Contour extract_contour(const FrameMask& mask);

}  // namespace pvol
