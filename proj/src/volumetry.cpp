#include "pvol/volumetry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pvol/errors.hpp"
#include "pvol/raster.hpp"

namespace pvol {
namespace {

bool major_is_horizontal(const EllipseParams& e) {
  const double q = std::numbers::pi / 4.0;
  return e.orientation_rad < q || e.orientation_rad >= 3.0 * q;
}

struct FrameFit {
  EllipseParams ellipse;
  double horizontal_mm;
  double vertical_mm;
};

/// Fit the mid-plane perimeter and report image-axis diameters. Boundary
/// pixel centers sit on average half a pixel inside the organ outline, so
/// each diameter is widened by one pixel pitch along its axis.
FrameFit fit_midplane(const Sweep& sweep, std::size_t index) {
  const FrameMask& frame = sweep.frame(index);
  const std::string where = std::string(to_string(sweep.plane())) +
                            " frame " + std::to_string(index) + ": ";
  try {
    const Contour contour = extract_contour(frame);
    const EllipseParams ellipse = fit_ellipse(contour.points_mm);
    const ImageAxisDiameters axes = image_axis_diameters(ellipse);
    return {ellipse, axes.horizontal_mm + frame.spacing().dx_mm,
            axes.vertical_mm + frame.spacing().dy_mm};
  } catch (const DegenerateMaskError& e) {
    throw DegenerateMaskError(where + e.what());
  } catch (const InsufficientPointsError& e) {
    throw InsufficientPointsError(where + e.what());
  } catch (const FitError& e) {
    throw FitError(where + e.what());
  }
}

void require_plane(const Sweep& sweep, PlaneKind expected) {
  if (sweep.plane() != expected)
    throw PlaneMismatchError(std::string("expected a ") + to_string(expected) +
                             " sweep, got " + to_string(sweep.plane()) +
                             " (patient " + sweep.patient_id() + ")");
}

}  // namespace

std::size_t select_midplane(const Sweep& sweep, std::size_t min_area_px) {
  std::size_t best_index = 0;
  std::size_t best_area = 0;
  bool found = false;
  for (std::size_t i = 0; i < sweep.frame_count(); ++i) {
    const std::size_t area = largest_component_area(sweep.frame(i));
    if (area < min_area_px) continue;
    if (!found || area > best_area) {  // ties keep the lowest index
      found = true;
      best_area = area;
      best_index = i;
    }
  }
  if (!found)
    throw EmptySweepError(std::string(to_string(sweep.plane())) +
                          " sweep of patient " + sweep.patient_id() +
                          ": no frame reaches min area " +
                          std::to_string(min_area_px) + " px");
  return best_index;
}

AxialExtraction extract_axial_diameters(const Sweep& sweep,
                                        std::size_t min_area_px,
                                        AxisPolicy policy) {
  require_plane(sweep, PlaneKind::Axial);
  const std::size_t mid = select_midplane(sweep, min_area_px);
  const FrameFit fit = fit_midplane(sweep, mid);

  bool frontal_is_horizontal = true;
  switch (policy) {
    case AxisPolicy::OrientationQuadrant:
    case AxisPolicy::Horizontal:
      frontal_is_horizontal = true;
      break;
    case AxisPolicy::Vertical:
      frontal_is_horizontal = false;
      break;
    case AxisPolicy::Major:
      frontal_is_horizontal = major_is_horizontal(fit.ellipse);
      break;
    case AxisPolicy::Minor:
      frontal_is_horizontal = !major_is_horizontal(fit.ellipse);
      break;
  }
  AxialExtraction out;
  out.frontal_mm = frontal_is_horizontal ? fit.horizontal_mm : fit.vertical_mm;
  out.longitudinal_mm =
      frontal_is_horizontal ? fit.vertical_mm : fit.horizontal_mm;
  out.midplane_index = mid;
  out.ellipse = fit.ellipse;
  return out;
}

SagittalExtraction extract_sagittal_diameter(const Sweep& sweep,
                                             std::size_t min_area_px,
                                             AxisPolicy policy) {
  require_plane(sweep, PlaneKind::Sagittal);
  const std::size_t mid = select_midplane(sweep, min_area_px);
  const FrameFit fit = fit_midplane(sweep, mid);

  bool take_horizontal = true;
  switch (policy) {
    case AxisPolicy::OrientationQuadrant:
    case AxisPolicy::Horizontal:
      take_horizontal = true;
      break;
    case AxisPolicy::Vertical:
      take_horizontal = false;
      break;
    case AxisPolicy::Major:
      take_horizontal = major_is_horizontal(fit.ellipse);
      break;
    case AxisPolicy::Minor:
      take_horizontal = !major_is_horizontal(fit.ellipse);
      break;
  }
  SagittalExtraction out;
  out.sagittal_mm = take_horizontal ? fit.horizontal_mm : fit.vertical_mm;
  out.midplane_index = mid;
  out.ellipse = fit.ellipse;
  return out;
}

double ellipsoid_volume_ml(const DiameterTriple& d) {
  if (!(d.frontal_mm > 0.0 && d.longitudinal_mm > 0.0 &&
        d.sagittal_mm > 0.0) ||
      !std::isfinite(d.frontal_mm) || !std::isfinite(d.longitudinal_mm) ||
      !std::isfinite(d.sagittal_mm))
    throw DomainError("ellipsoid volume needs three positive diameters");
  return d.frontal_mm * d.longitudinal_mm * d.sagittal_mm * std::numbers::pi /
         6.0 / 1000.0;
}

VolumeEstimate estimate_volume(const Sweep& axial, const Sweep& sagittal,
                               std::size_t min_area_px, AxisPolicy policy) {
  const AxialExtraction ax = extract_axial_diameters(axial, min_area_px,
                                                     policy);
  const SagittalExtraction sag =
      extract_sagittal_diameter(sagittal, min_area_px, policy);

  VolumeEstimate out;
  out.diameters = {ax.frontal_mm, ax.longitudinal_mm, sag.sagittal_mm};
  out.volume_ml = ellipsoid_volume_ml(out.diameters);
  out.axial_midplane_index = ax.midplane_index;
  out.sagittal_midplane_index = sag.midplane_index;
  out.axial_ellipse = ax.ellipse;
  out.sagittal_ellipse = sag.ellipse;
  return out;
}

const char* to_string(AxisPolicy policy) {
  switch (policy) {
    case AxisPolicy::OrientationQuadrant:
      return "orientation-quadrant";
    case AxisPolicy::Major:
      return "major";
    case AxisPolicy::Minor:
      return "minor";
    case AxisPolicy::Horizontal:
      return "horizontal";
    case AxisPolicy::Vertical:
      return "vertical";
  }
  return "orientation-quadrant";
}

AxisPolicy axis_policy_from_string(const std::string& name) {
  if (name == "orientation-quadrant") return AxisPolicy::OrientationQuadrant;
  if (name == "major") return AxisPolicy::Major;
  if (name == "minor") return AxisPolicy::Minor;
  if (name == "horizontal") return AxisPolicy::Horizontal;
  if (name == "vertical") return AxisPolicy::Vertical;
  throw InputError("unknown axis policy \"" + name + "\"");
}

}  // namespace pvol
