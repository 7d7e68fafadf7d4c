#pragma once

#include <cstddef>
#include <string>

#include "pvol/ellipse.hpp"
#include "pvol/mask.hpp"

namespace pvol {

/// The three anatomical diameters feeding the ellipsoid volume.
struct DiameterTriple {
  double frontal_mm = 0.0;
  double longitudinal_mm = 0.0;
  double sagittal_mm = 0.0;
};

/// How fitted ellipse axes map onto anatomical diameters. The default
/// classifies axes by orientation quadrant: in axial frames the horizontal
/// diameter is frontal and the vertical one longitudinal; in sagittal frames
/// the horizontal diameter is the sagittal extent.
enum class AxisPolicy {
  OrientationQuadrant,
  Major,
  Minor,
  Horizontal,
  Vertical,
};

/// Frames whose largest component is smaller than this are never selected as
/// mid-plane; keeps speckle artifacts from winning an otherwise bad sweep.
inline constexpr std::size_t kDefaultMinAreaPx = 100;

struct AxialExtraction {
  double frontal_mm = 0.0;
  double longitudinal_mm = 0.0;
  std::size_t midplane_index = 0;
  EllipseParams ellipse;
};

struct SagittalExtraction {
  double sagittal_mm = 0.0;
  std::size_t midplane_index = 0;
  EllipseParams ellipse;
};

struct VolumeEstimate {
  double volume_ml = 0.0;
  DiameterTriple diameters;
  std::size_t axial_midplane_index = 0;
  std::size_t sagittal_midplane_index = 0;
  EllipseParams axial_ellipse;
  EllipseParams sagittal_ellipse;
};

/// Index of the frame whose largest 8-connected component has the most
/// foreground pixels (ties to the lowest index). Frames below min_area_px are
/// skipped; throws EmptySweepError when nothing qualifies.
std::size_t select_midplane(const Sweep& sweep, std::size_t min_area_px);

AxialExtraction extract_axial_diameters(
    const Sweep& sweep, std::size_t min_area_px = kDefaultMinAreaPx,
    AxisPolicy policy = AxisPolicy::OrientationQuadrant);

SagittalExtraction extract_sagittal_diameter(
    const Sweep& sweep, std::size_t min_area_px = kDefaultMinAreaPx,
    AxisPolicy policy = AxisPolicy::OrientationQuadrant);

/// PV = frontal * longitudinal * sagittal * pi/6, converted mm^3 -> mL.
double ellipsoid_volume_ml(const DiameterTriple& d);

/// Full pipeline: mid-plane per sweep, ellipse through each perimeter, three
/// diameters, ellipsoid volume.
VolumeEstimate estimate_volume(
    const Sweep& axial, const Sweep& sagittal,
    std::size_t min_area_px = kDefaultMinAreaPx,
    AxisPolicy policy = AxisPolicy::OrientationQuadrant);

const char* to_string(AxisPolicy policy);
AxisPolicy axis_policy_from_string(const std::string& name);

}  // namespace pvol
