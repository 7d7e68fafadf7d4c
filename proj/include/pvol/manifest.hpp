#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pvol/mask.hpp"

namespace pvol {

/// Reference to one on-disk sweep: a directory plus an ordered list of PGM
/// frame files and the mandatory pixel spacing.
struct SweepRef {
  std::filesystem::path dir;
  std::vector<std::string> files;
  PixelSpacing spacing;
};

/// One additional observer's delineations (inter-observer analysis).
struct ObserverSet {
  std::optional<SweepRef> axial;
  std::optional<SweepRef> sagittal;
};

struct PatientRecord {
  std::string id;
  std::vector<SweepRef> axial_pred;
  std::vector<SweepRef> sagittal_pred;
  std::optional<SweepRef> axial_gt;
  std::optional<SweepRef> sagittal_gt;
  std::optional<double> reference_volume_ml;
  std::vector<ObserverSet> observers;

  bool has_dual_plane_pred() const {
    return !axial_pred.empty() && !sagittal_pred.empty();
  }
};

/// Parse a manifest JSON document. Sweep directories are resolved against the
/// manifest's parent directory. Duplicate patient ids are rejected.
std::vector<PatientRecord> load_manifest(const std::filesystem::path& path);

/// Write records back out in the same schema (used by the phantom generator).
/// Sweep directories must already be relative to `path`'s parent.
void write_manifest(const std::filesystem::path& path,
                    const std::vector<PatientRecord>& records);

/// Load the PGM frames named by a SweepRef, in the listed order.
Sweep load_sweep(const SweepRef& ref, const std::string& patient_id,
                 PlaneKind plane);

}  // namespace pvol
