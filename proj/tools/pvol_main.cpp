// pvol: prostate volumetry from binary mask sweeps.
//
// Subcommands:
//   estimate  per-patient diameters and ellipsoid volume
//   evaluate  segmentation metrics + Bland-Altman agreement
//   split     held-out test selection and k-fold assignment
//   phantom   synthetic ellipsoid dataset with known volume

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pvol/errors.hpp"
#include "pvol/report.hpp"

namespace {

void add_common_flags(CLI::App* cmd, pvol::CommonOptions& options,
                      std::string& axis_policy, std::string& midplane_source,
                      std::vector<std::int64_t>& axial_sweep,
                      std::vector<std::int64_t>& sagittal_sweep) {
  cmd->add_option("--manifest", options.manifest, "Dataset manifest (JSON)")
      ->required();
  cmd->add_option("--out-dir", options.out_dir, "Output directory")
      ->required();
  cmd->add_option("--min-area-px", options.min_area_px,
                  "Smallest mask area eligible as mid-plane")
      ->capture_default_str();
  cmd->add_option("--axis-policy", axis_policy,
                  "Ellipse-axis-to-diameter mapping: orientation-quadrant, "
                  "major, minor, horizontal, vertical")
      ->capture_default_str();
  cmd->add_option("--midplane-source", midplane_source,
                  "Mid-plane anchor for metrics: ground-truth or prediction")
      ->capture_default_str();
  cmd->add_option("--jobs", options.jobs, "Patients processed concurrently")
      ->capture_default_str();
  cmd->add_option("--seed", options.seed, "Seed for anything randomized")
      ->capture_default_str();
  cmd->add_option("--axial-sweep", axial_sweep,
                  "Use this axial sweep index for every patient")
      ->expected(0, 1);
  cmd->add_option("--sagittal-sweep", sagittal_sweep,
                  "Use this sagittal sweep index for every patient")
      ->expected(0, 1);
}

void finish_common(pvol::CommonOptions& options, const std::string& axis_policy,
                   const std::string& midplane_source,
                   const std::vector<std::int64_t>& axial_sweep,
                   const std::vector<std::int64_t>& sagittal_sweep) {
  options.axis_policy = pvol::axis_policy_from_string(axis_policy);
  if (midplane_source == "ground-truth")
    options.midplane_source = pvol::MidplaneSource::GroundTruth;
  else if (midplane_source == "prediction")
    options.midplane_source = pvol::MidplaneSource::Prediction;
  else
    throw pvol::InputError("unknown --midplane-source \"" + midplane_source +
                           "\"");
  if (options.jobs < 1) throw pvol::InputError("--jobs must be at least 1");
  if (!axial_sweep.empty()) {
    if (axial_sweep[0] < 0)
      throw pvol::InputError("--axial-sweep must be non-negative");
    options.axial_sweep_index = static_cast<std::size_t>(axial_sweep[0]);
  }
  if (!sagittal_sweep.empty()) {
    if (sagittal_sweep[0] < 0)
      throw pvol::InputError("--sagittal-sweep must be non-negative");
    options.sagittal_sweep_index = static_cast<std::size_t>(sagittal_sweep[0]);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prostate volumetry from binary ultrasound mask sweeps"};
  app.require_subcommand(1);

  pvol::CommonOptions estimate_opts;
  pvol::CommonOptions evaluate_opts;
  pvol::SplitOptions split_opts;
  pvol::PhantomOptions phantom_opts;
  std::string est_policy = "orientation-quadrant";
  std::string est_mid = "ground-truth";
  std::string eval_policy = "orientation-quadrant";
  std::string eval_mid = "ground-truth";
  std::vector<std::int64_t> est_ax, est_sag, eval_ax, eval_sag;
  std::vector<double> phantom_spacing{0.4, 0.4};

  CLI::App* estimate = app.add_subcommand(
      "estimate", "Estimate per-patient prostate volumes");
  add_common_flags(estimate, estimate_opts, est_policy, est_mid, est_ax,
                   est_sag);

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Segmentation metrics and volume agreement");
  add_common_flags(evaluate, evaluate_opts, eval_policy, eval_mid, eval_ax,
                   eval_sag);

  CLI::App* split =
      app.add_subcommand("split", "Test holdout and k-fold assignment");
  split->add_option("--manifest", split_opts.manifest, "Dataset manifest")
      ->required();
  split->add_option("--out-dir", split_opts.out_dir, "Output directory")
      ->required();
  split->add_option("--k", split_opts.k, "Fold count")->capture_default_str();
  split->add_option("--test-count", split_opts.test_count,
                    "Dual-plane patients held out as the test set")
      ->capture_default_str();
  split->add_option("--seed", split_opts.seed, "Shuffle seed")
      ->capture_default_str();

  CLI::App* phantom = app.add_subcommand(
      "phantom", "Generate an ellipsoid phantom dataset");
  phantom->add_option("--out-dir", phantom_opts.out_dir, "Output directory")
      ->required();
  phantom->add_option("--count", phantom_opts.count, "Number of patients")
      ->capture_default_str();
  phantom
      ->add_option("--frontal-mm", phantom_opts.spec.frontal_mm,
                   "Frontal diameter")
      ->capture_default_str();
  phantom
      ->add_option("--longitudinal-mm", phantom_opts.spec.longitudinal_mm,
                   "Longitudinal diameter")
      ->capture_default_str();
  phantom
      ->add_option("--sagittal-mm", phantom_opts.spec.sagittal_mm,
                   "Sagittal diameter")
      ->capture_default_str();
  phantom
      ->add_option("--spacing-mm", phantom_spacing,
                   "Pixel spacing: dx_mm dy_mm")
      ->expected(2);
  phantom
      ->add_option("--slice-step-mm", phantom_opts.spec.slice_step_mm,
                   "Distance between consecutive frames")
      ->capture_default_str();
  phantom
      ->add_option("--frame-width", phantom_opts.spec.frame_width,
                   "Frame width in pixels")
      ->capture_default_str();
  phantom
      ->add_option("--frame-height", phantom_opts.spec.frame_height,
                   "Frame height in pixels")
      ->capture_default_str();
  phantom
      ->add_option("--offset-x-mm", phantom_opts.spec.center_offset_x_mm,
                   "In-plane center offset, x")
      ->capture_default_str();
  phantom
      ->add_option("--offset-y-mm", phantom_opts.spec.center_offset_y_mm,
                   "In-plane center offset, y")
      ->capture_default_str();
  phantom
      ->add_option("--jitter-sigma-mm", phantom_opts.spec.jitter_sigma_mm,
                   "Boundary noise applied to predicted sweeps")
      ->capture_default_str();
  phantom
      ->add_option("--dropout", phantom_opts.spec.extremity_dropout,
                   "P(empty frame) near apex/base in predicted sweeps")
      ->capture_default_str();
  phantom
      ->add_option("--vary-pct", phantom_opts.vary_pct,
                   "Randomize diameters per patient by +-percent")
      ->capture_default_str();
  phantom->add_option("--seed", phantom_opts.seed, "Generation seed")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return pvol::kExitInputError;
  }

  try {
    if (estimate->parsed()) {
      finish_common(estimate_opts, est_policy, est_mid, est_ax, est_sag);
      return pvol::run_estimate(estimate_opts);
    }
    if (evaluate->parsed()) {
      finish_common(evaluate_opts, eval_policy, eval_mid, eval_ax, eval_sag);
      return pvol::run_evaluate(evaluate_opts);
    }
    if (split->parsed()) return pvol::run_split(split_opts);
    if (phantom->parsed()) {
      phantom_opts.spec.spacing = {phantom_spacing[0], phantom_spacing[1]};
      return pvol::run_phantom(phantom_opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pvol::kExitInputError;
  }
  return pvol::kExitInputError;
}
