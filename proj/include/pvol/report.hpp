#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "pvol/metrics.hpp"
#include "pvol/phantom.hpp"
#include "pvol/stats.hpp"
#include "pvol/volumetry.hpp"

namespace pvol {

/// Exit-code contract shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitPartialFailure = 2;

struct CommonOptions {
  std::filesystem::path manifest;
  std::filesystem::path out_dir;
  std::size_t min_area_px = kDefaultMinAreaPx;
  AxisPolicy axis_policy = AxisPolicy::OrientationQuadrant;
  MidplaneSource midplane_source = MidplaneSource::GroundTruth;
  int jobs = 1;
  std::uint64_t seed = 0;
  /// Explicit sweep selection; default picks the sweep whose mid-plane is
  /// globally largest.
  std::optional<std::size_t> axial_sweep_index;
  std::optional<std::size_t> sagittal_sweep_index;
};

struct SplitOptions {
  std::filesystem::path manifest;
  std::filesystem::path out_dir;
  int k = 4;
  std::size_t test_count = 10;
  std::uint64_t seed = 0;
};

struct PhantomOptions {
  std::filesystem::path out_dir;
  PhantomSpec spec;
  std::size_t count = 1;
  double vary_pct = 0.0;  ///< per-patient diameter variation, +-percent
  std::uint64_t seed = 0;
};

/// Estimate volumes for every patient; writes volumes.csv and volumes.json.
int run_estimate(const CommonOptions& options);

/// Segmentation metrics, Bland-Altman agreement, inter-observer table and
/// the agreement plot; writes segmentation_metrics.csv, agreement.csv,
/// interobserver.csv (when observers exist) and bland_altman.svg.
int run_evaluate(const CommonOptions& options);

/// Held-out test selection plus k-fold assignment; writes splits.json.
int run_split(const SplitOptions& options);

/// Generate a phantom dataset (clean ground truth, optionally perturbed
/// predictions) with its manifest.
int run_phantom(const PhantomOptions& options);

/// Bland-Altman scatter as a self-contained 800x600 SVG, deterministic bytes.
void write_bland_altman_svg(const std::filesystem::path& path,
                            const AgreementReport& report);

}  // namespace pvol
