#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pvol/mask.hpp"

namespace pvol {

/// Which sweep anchors the mid-plane frame for the *-MidPlane metrics.
enum class MidplaneSource { GroundTruth, Prediction };

/// Per-sweep segmentation quality. hd_midplane_mm is absent when either mask
/// is empty on the mid-plane frame (the distance is undefined there).
struct SweepMetrics {
  std::vector<std::pair<std::size_t, double>> per_frame_dice;
  double dice_mean = 0.0;
  double dice_midplane = 0.0;
  std::optional<double> hd_midplane_mm;
  std::size_t midplane_index = 0;
};

/// Overlap coefficient 2|A^B| / (|A|+|B|). Both empty -> 1, one empty -> 0.
double dice(const FrameMask& a, const FrameMask& b);

/// Symmetric Hausdorff distance between the boundary pixel sets, in mm,
/// with anisotropic pixel spacing. Computed through an exact Euclidean
/// distance transform of each boundary.
double hausdorff_mm(const FrameMask& a, const FrameMask& b);

/// Verification oracle: the same distance by exhaustive pairwise boundary
/// enumeration. Matches hausdorff_mm exactly.
double hausdorff_bruteforce_mm(const FrameMask& a, const FrameMask& b);

/// Per-frame Dice over a whole sweep plus Dice/HD on the mid-plane frame
/// (the anchor sweep's largest frame).
SweepMetrics sweep_metrics(const Sweep& pred, const Sweep& gt,
                           MidplaneSource source = MidplaneSource::GroundTruth);

/// Mean of sweep_metrics over several observers against one reference.
SweepMetrics interobserver(std::span<const Sweep> observers,
                           const Sweep& reference,
                           MidplaneSource source = MidplaneSource::GroundTruth);

}  // namespace pvol
