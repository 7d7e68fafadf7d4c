#pragma once

#include <cstdint>
#include <string>

#include "pvol/mask.hpp"

namespace pvol {

/// Synthetic ellipsoid with analytically known geometry. Sweeps generated
/// from it rasterize exact cross-sections, so the volume pipeline can be
/// checked against `analytic_volume_ml` with no free parameters.
struct PhantomSpec {
  double frontal_mm = 50.0;
  double longitudinal_mm = 40.1;
  double sagittal_mm = 48.9;
  PixelSpacing spacing{0.4, 0.4};
  double slice_step_mm = 1.0;
  int frame_width = 160;
  int frame_height = 160;
  double center_offset_x_mm = 0.0;
  double center_offset_y_mm = 0.0;
  double jitter_sigma_mm = 0.0;   ///< radial boundary noise amplitude
  double extremity_dropout = 0.0;  ///< P(drop foreground) near apex/base
  std::uint64_t seed = 0;

  void validate() const;
};

/// Rasterize the ellipsoid into a clean (noise-free) sweep. Axial sweeps
/// slice along the cranio-caudal axis with (frontal, longitudinal) mapping to
/// (horizontal, vertical); sagittal sweeps slice along the frontal axis with
/// (sagittal, longitudinal) in-plane. A pixel is foreground iff its center
/// lies inside the cross-section. The sweep covers the whole ellipsoid plus
/// at least one empty frame at each end.
Sweep generate_sweep(const PhantomSpec& spec, PlaneKind plane,
                     const std::string& patient_id = "phantom");

/// Exact ellipsoid volume of the generating diameters, in mL.
double analytic_volume_ml(const PhantomSpec& spec);

/// Segmentation-error model: each frame's boundary is displaced radially by
/// smooth angular noise (three harmonics, standard deviation
/// jitter_sigma_mm), and frames in the outer 20% of the foreground extent
/// (10% per end) drop all foreground with probability extremity_dropout.
/// Deterministic for a fixed (sweep, seed).
Sweep perturb_sweep(const Sweep& sweep, double jitter_sigma_mm,
                    double extremity_dropout, std::uint64_t seed);

}  // namespace pvol
