#include "pvol/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>
#include <vector>

#include <json.hpp>

#include "pvol/errors.hpp"
#include "pvol/pgm.hpp"
#include "pvol/raster.hpp"

namespace pvol {
namespace {

using nlohmann::json;

std::string fmt(double value, int precision) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path.string());
  out << content;
  if (!out) throw ParseError("short write: " + path.string());
}

/// Run fn(0..n-1) on up to `jobs` worker threads. fn must not throw.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  const int workers =
      std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
        fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

struct ChosenSweep {
  Sweep sweep;
  std::size_t index;
};

/// Default sweep selection when a patient has several acquisitions per
/// plane: take the one whose best frame (largest-component area) is globally
/// largest; ties go to the lowest sweep index.
ChosenSweep choose_sweep(const std::vector<SweepRef>& refs,
                         const std::string& patient_id, PlaneKind plane,
                         std::optional<std::size_t> forced_index) {
  if (refs.empty())
    throw InputError("patient " + patient_id + " has no " + to_string(plane) +
                     " predicted sweep");
  if (forced_index) {
    if (*forced_index >= refs.size())
      throw InputError("patient " + patient_id + ": sweep index " +
                       std::to_string(*forced_index) + " out of range (" +
                       std::to_string(refs.size()) + " sweeps)");
    return {load_sweep(refs[*forced_index], patient_id, plane), *forced_index};
  }
  if (refs.size() == 1) return {load_sweep(refs[0], patient_id, plane), 0};

  std::optional<ChosenSweep> best;
  std::size_t best_area = 0;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    Sweep sweep = load_sweep(refs[i], patient_id, plane);
    std::size_t area = 0;
    for (const auto& frame : sweep.frames())
      area = std::max(area, largest_component_area(frame));
    if (!best || area > best_area) {
      best_area = area;
      best = ChosenSweep{std::move(sweep), i};
    }
  }
  return std::move(*best);
}

json ellipse_json(const EllipseParams& e) {
  return {{"cx_mm", e.cx_mm},
          {"cy_mm", e.cy_mm},
          {"semi_major_mm", e.semi_major_mm},
          {"semi_minor_mm", e.semi_minor_mm},
          {"orientation_rad", e.orientation_rad}};
}

// ---------------------------------------------------------------- estimate

struct EstimateRow {
  std::string id;
  bool ok = false;
  std::string error;
  VolumeEstimate est;
  std::size_t axial_sweep = 0;
  std::size_t sagittal_sweep = 0;
};

}  // namespace

int run_estimate(const CommonOptions& options) {
  const std::vector<PatientRecord> records = load_manifest(options.manifest);
  std::filesystem::create_directories(options.out_dir);

  std::vector<EstimateRow> rows(records.size());
  parallel_for(records.size(), options.jobs, [&](std::size_t i) {
    const PatientRecord& rec = records[i];
    EstimateRow& row = rows[i];
    row.id = rec.id;
    try {
      ChosenSweep axial = choose_sweep(rec.axial_pred, rec.id,
                                       PlaneKind::Axial,
                                       options.axial_sweep_index);
      ChosenSweep sagittal = choose_sweep(rec.sagittal_pred, rec.id,
                                          PlaneKind::Sagittal,
                                          options.sagittal_sweep_index);
      row.est = estimate_volume(axial.sweep, sagittal.sweep,
                                options.min_area_px, options.axis_policy);
      row.axial_sweep = axial.index;
      row.sagittal_sweep = sagittal.index;
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });

  std::sort(rows.begin(), rows.end(),
            [](const EstimateRow& a, const EstimateRow& b) {
              return a.id < b.id;
            });

  std::string csv =
      "patient_id,frontal_mm,longitudinal_mm,sagittal_mm,volume_ml,"
      "axial_midplane,sagittal_midplane,status,error\n";
  json doc;
  doc["axis_policy"] = to_string(options.axis_policy);
  doc["min_area_px"] = options.min_area_px;
  doc["patients"] = json::array();

  bool any_failed = false;
  for (const auto& row : rows) {
    json p;
    p["id"] = row.id;
    if (row.ok) {
      const auto& d = row.est.diameters;
      csv += csv_escape(row.id) + "," + fmt(d.frontal_mm, 3) + "," +
             fmt(d.longitudinal_mm, 3) + "," + fmt(d.sagittal_mm, 3) + "," +
             fmt(row.est.volume_ml, 2) + "," +
             std::to_string(row.est.axial_midplane_index) + "," +
             std::to_string(row.est.sagittal_midplane_index) + ",ok,\n";
      p["status"] = "ok";
      p["frontal_mm"] = d.frontal_mm;
      p["longitudinal_mm"] = d.longitudinal_mm;
      p["sagittal_mm"] = d.sagittal_mm;
      p["volume_ml"] = row.est.volume_ml;
      p["axial"] = {{"midplane_index", row.est.axial_midplane_index},
                    {"sweep_index", row.axial_sweep},
                    {"ellipse", ellipse_json(row.est.axial_ellipse)}};
      p["sagittal"] = {{"midplane_index", row.est.sagittal_midplane_index},
                       {"sweep_index", row.sagittal_sweep},
                       {"ellipse", ellipse_json(row.est.sagittal_ellipse)}};
    } else {
      any_failed = true;
      std::cerr << "estimate: patient " << row.id << " failed: " << row.error
                << "\n";
      csv += csv_escape(row.id) + ",,,,,,,failed," + csv_escape(row.error) +
             "\n";
      p["status"] = "failed";
      p["error"] = row.error;
    }
    doc["patients"].push_back(p);
  }

  write_text_file(options.out_dir / "volumes.csv", csv);
  write_text_file(options.out_dir / "volumes.json", doc.dump(2) + "\n");
  return any_failed ? kExitPartialFailure : kExitOk;
}

// ---------------------------------------------------------------- evaluate

namespace {

struct SegRow {
  std::string id;
  PlaneKind plane;
  SweepMetrics metrics;
};

struct InterRow {
  std::string id;
  PlaneKind plane;
  std::size_t observer_count = 0;
  SweepMetrics mean;
};

struct EvalResult {
  std::vector<SegRow> seg;
  std::vector<InterRow> inter;
  std::optional<VolumePair> pair;
  std::vector<std::string> errors;
};

/// Pick the predicted sweep that is frame-aligned with the ground truth.
Sweep aligned_pred_sweep(const std::vector<SweepRef>& refs,
                         const std::string& patient_id, PlaneKind plane,
                         std::optional<std::size_t> forced_index,
                         std::size_t gt_frames) {
  if (forced_index) {
    if (*forced_index >= refs.size())
      throw InputError("sweep index " + std::to_string(*forced_index) +
                       " out of range");
    return load_sweep(refs[*forced_index], patient_id, plane);
  }
  for (const auto& ref : refs) {
    if (ref.files.size() == gt_frames)
      return load_sweep(ref, patient_id, plane);
  }
  throw AlignmentError("no predicted " + std::string(to_string(plane)) +
                       " sweep matches the ground truth frame count (" +
                       std::to_string(gt_frames) + ")");
}

void evaluate_plane(const PatientRecord& rec, PlaneKind plane,
                    const CommonOptions& options, EvalResult& result) {
  const std::optional<SweepRef>& gt_ref =
      plane == PlaneKind::Axial ? rec.axial_gt : rec.sagittal_gt;
  const std::vector<SweepRef>& pred_refs =
      plane == PlaneKind::Axial ? rec.axial_pred : rec.sagittal_pred;
  if (!gt_ref || pred_refs.empty()) return;

  const Sweep gt = load_sweep(*gt_ref, rec.id, plane);
  const Sweep pred = aligned_pred_sweep(
      pred_refs, rec.id, plane,
      plane == PlaneKind::Axial ? options.axial_sweep_index
                                : options.sagittal_sweep_index,
      gt.frame_count());
  result.seg.push_back(
      {rec.id, plane, sweep_metrics(pred, gt, options.midplane_source)});

  std::vector<Sweep> observers;
  for (const auto& set : rec.observers) {
    const std::optional<SweepRef>& ref =
        plane == PlaneKind::Axial ? set.axial : set.sagittal;
    if (ref) observers.push_back(load_sweep(*ref, rec.id, plane));
  }
  if (!observers.empty()) {
    result.inter.push_back(
        {rec.id, plane, observers.size(),
         interobserver(observers, gt, options.midplane_source)});
  }
}

std::string hd_cell(const std::optional<double>& hd) {
  return hd ? fmt(*hd, 3) : "nan";
}

}  // namespace

int run_evaluate(const CommonOptions& options) {
  const std::vector<PatientRecord> records = load_manifest(options.manifest);
  std::filesystem::create_directories(options.out_dir);

  std::size_t evaluable = 0;
  for (const auto& rec : records) {
    const bool has_metrics =
        (rec.axial_gt && !rec.axial_pred.empty()) ||
        (rec.sagittal_gt && !rec.sagittal_pred.empty());
    const bool has_agreement =
        rec.reference_volume_ml && rec.has_dual_plane_pred();
    if (has_metrics || has_agreement) ++evaluable;
  }
  if (evaluable == 0)
    throw InputError(
        "no evaluable patients: nobody has ground truth sweeps or a "
        "reference volume with dual-plane predictions");

  std::vector<EvalResult> results(records.size());
  parallel_for(records.size(), options.jobs, [&](std::size_t i) {
    const PatientRecord& rec = records[i];
    EvalResult& result = results[i];
    for (const PlaneKind plane : {PlaneKind::Axial, PlaneKind::Sagittal}) {
      try {
        evaluate_plane(rec, plane, options, result);
      } catch (const std::exception& e) {
        result.errors.push_back(rec.id + " (" + to_string(plane) +
                                "): " + e.what());
      }
    }
    if (rec.reference_volume_ml && rec.has_dual_plane_pred()) {
      try {
        ChosenSweep axial = choose_sweep(rec.axial_pred, rec.id,
                                         PlaneKind::Axial,
                                         options.axial_sweep_index);
        ChosenSweep sagittal = choose_sweep(rec.sagittal_pred, rec.id,
                                            PlaneKind::Sagittal,
                                            options.sagittal_sweep_index);
        const VolumeEstimate est =
            estimate_volume(axial.sweep, sagittal.sweep, options.min_area_px,
                            options.axis_policy);
        result.pair =
            VolumePair{rec.id, est.volume_ml, *rec.reference_volume_ml};
      } catch (const std::exception& e) {
        result.errors.push_back(rec.id + " (volume): " + e.what());
      }
    }
  });

  std::vector<SegRow> seg;
  std::vector<InterRow> inter;
  std::vector<VolumePair> pairs;
  bool any_failed = false;
  for (const auto& result : results) {
    seg.insert(seg.end(), result.seg.begin(), result.seg.end());
    inter.insert(inter.end(), result.inter.begin(), result.inter.end());
    if (result.pair) pairs.push_back(*result.pair);
    for (const auto& err : result.errors) {
      any_failed = true;
      std::cerr << "evaluate: " << err << "\n";
    }
  }
  const auto row_order = [](const auto& a, const auto& b) {
    return a.id != b.id ? a.id < b.id : a.plane < b.plane;
  };
  std::sort(seg.begin(), seg.end(), row_order);
  std::sort(inter.begin(), inter.end(), row_order);
  std::sort(pairs.begin(), pairs.end(),
            [](const VolumePair& a, const VolumePair& b) {
              return a.patient_id < b.patient_id;
            });

  std::string seg_csv =
      "patient_id,plane,dice_mean,dice_midplane,hd_midplane_mm,"
      "midplane_index\n";
  for (const auto& row : seg) {
    seg_csv += csv_escape(row.id) + "," + to_string(row.plane) + "," +
               fmt(row.metrics.dice_mean, 4) + "," +
               fmt(row.metrics.dice_midplane, 4) + "," +
               hd_cell(row.metrics.hd_midplane_mm) + "," +
               std::to_string(row.metrics.midplane_index) + "\n";
  }
  write_text_file(options.out_dir / "segmentation_metrics.csv", seg_csv);

  if (!inter.empty()) {
    std::string inter_csv =
        "patient_id,plane,observer_count,dice_mean,dice_midplane,"
        "hd_midplane_mm\n";
    for (const auto& row : inter) {
      inter_csv += csv_escape(row.id) + "," + to_string(row.plane) + "," +
                   std::to_string(row.observer_count) + "," +
                   fmt(row.mean.dice_mean, 4) + "," +
                   fmt(row.mean.dice_midplane, 4) + "," +
                   hd_cell(row.mean.hd_midplane_mm) + "\n";
    }
    write_text_file(options.out_dir / "interobserver.csv", inter_csv);
  }

  if (pairs.size() >= 2) {
    const AgreementReport report = bland_altman(pairs);
    std::vector<double> abs_rel;
    for (const double r : report.relative_errors)
      abs_rel.push_back(std::abs(r));

    std::string csv =
        "patient_id,predicted_ml,reference_ml,mean_ml,"
        "diff_ml_ref_minus_pred,relative_error,bias_ml_ref_minus_pred,sd_ml,"
        "loa_low_ml,loa_high_ml,diff_p2_5_ml,diff_p97_5_ml,rel_err_median,"
        "rel_err_p2_5,rel_err_p97_5,abs_rel_err_median\n";
    const std::string summary =
        fmt(report.bias_ml, 3) + "," + fmt(report.sd_ml, 3) + "," +
        fmt(report.loa_low_ml, 3) + "," + fmt(report.loa_high_ml, 3) + "," +
        fmt(report.diff_p2_5_ml, 3) + "," + fmt(report.diff_p97_5_ml, 3) +
        "," + fmt(percentile(report.relative_errors, 0.5), 4) + "," +
        fmt(percentile(report.relative_errors, 0.025), 4) + "," +
        fmt(percentile(report.relative_errors, 0.975), 4) + "," +
        fmt(percentile(abs_rel, 0.5), 4);
    for (std::size_t i = 0; i < report.pairs.size(); ++i) {
      const VolumePair& pair = report.pairs[i];
      const double mean = (pair.reference_ml + pair.predicted_ml) / 2.0;
      const double diff = pair.reference_ml - pair.predicted_ml;
      csv += csv_escape(pair.patient_id) + "," + fmt(pair.predicted_ml, 2) +
             "," + fmt(pair.reference_ml, 2) + "," + fmt(mean, 2) + "," +
             fmt(diff, 2) + "," + fmt(report.relative_errors[i], 4) + "," +
             summary + "\n";
    }
    write_text_file(options.out_dir / "agreement.csv", csv);
    write_bland_altman_svg(options.out_dir / "bland_altman.svg", report);
  } else if (!pairs.empty()) {
    std::cerr << "evaluate: only " << pairs.size()
              << " volume pair(s); agreement analysis needs at least 2\n";
  }

  return any_failed ? kExitPartialFailure : kExitOk;
}

// ------------------------------------------------------------------- split

int run_split(const SplitOptions& options) {
  const std::vector<PatientRecord> records = load_manifest(options.manifest);
  std::filesystem::create_directories(options.out_dir);

  const auto [test_ids, train_ids] =
      holdout_test_selection(records, options.test_count, options.seed);
  const FoldAssignment folds =
      kfold_split(train_ids, options.k, options.seed);

  json doc;
  doc["k"] = options.k;
  doc["seed"] = options.seed;
  doc["test_count"] = options.test_count;
  json assignment;
  for (const auto& id : test_ids) assignment[id] = "test";
  for (const auto& [id, fold] : folds.assignment)
    assignment[id] = "fold_" + std::to_string(fold);
  doc["assignment"] = assignment;
  write_text_file(options.out_dir / "splits.json", doc.dump(2) + "\n");
  return kExitOk;
}

// ----------------------------------------------------------------- phantom

namespace {

SweepRef write_sweep_files(const Sweep& sweep,
                           const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  SweepRef ref;
  ref.dir = dir;
  ref.spacing = sweep.spacing();
  for (std::size_t i = 0; i < sweep.frame_count(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04zu.pgm", i);
    write_mask_file(dir / name, sweep.frame(i));
    ref.files.push_back(name);
  }
  return ref;
}

}  // namespace

int run_phantom(const PhantomOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  std::vector<PatientRecord> records;

  for (std::size_t p = 0; p < options.count; ++p) {
    char pid[32];
    std::snprintf(pid, sizeof(pid), "phantom_%03zu", p);

    PhantomSpec spec = options.spec;
    spec.seed = mix_seed(options.seed, 4 * p);
    if (options.vary_pct > 0.0) {
      std::mt19937_64 rng(mix_seed(options.seed, 4 * p + 1));
      const double amp = options.vary_pct / 100.0;
      const auto vary = [&](double d) {
        const double u =
            static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
        return d * (1.0 + amp * (2.0 * u - 1.0));
      };
      spec.frontal_mm = vary(spec.frontal_mm);
      spec.longitudinal_mm = vary(spec.longitudinal_mm);
      spec.sagittal_mm = vary(spec.sagittal_mm);
    }

    const Sweep axial_gt = generate_sweep(spec, PlaneKind::Axial, pid);
    const Sweep sagittal_gt = generate_sweep(spec, PlaneKind::Sagittal, pid);
    // Noise models segmentation error, so it lands on the predicted sweeps;
    // the ground truth stays the clean rasterization.
    const Sweep axial_pred =
        perturb_sweep(axial_gt, spec.jitter_sigma_mm, spec.extremity_dropout,
                      mix_seed(options.seed, 4 * p + 2));
    const Sweep sagittal_pred =
        perturb_sweep(sagittal_gt, spec.jitter_sigma_mm,
                      spec.extremity_dropout, mix_seed(options.seed, 4 * p + 3));

    const std::filesystem::path base = options.out_dir / pid;
    PatientRecord rec;
    rec.id = pid;
    rec.axial_gt = write_sweep_files(axial_gt, base / "axial_gt");
    rec.sagittal_gt = write_sweep_files(sagittal_gt, base / "sagittal_gt");
    rec.axial_pred.push_back(write_sweep_files(axial_pred, base / "axial_pred"));
    rec.sagittal_pred.push_back(
        write_sweep_files(sagittal_pred, base / "sagittal_pred"));
    rec.reference_volume_ml = analytic_volume_ml(spec);
    records.push_back(std::move(rec));
  }

  write_manifest(options.out_dir / "manifest.json", records);
  return kExitOk;
}

// -------------------------------------------------------------------- svg

namespace {

struct LinearScale {
  double v0, v1;  // data range
  double p0, p1;  // pixel range

  double operator()(double v) const {
    return p0 + (v - v0) / (v1 - v0) * (p1 - p0);
  }
};

void svg_line(std::string& svg, double x1, double y1, double x2, double y2,
              const std::string& style) {
  svg += "<line x1=\"" + fmt(x1, 2) + "\" y1=\"" + fmt(y1, 2) + "\" x2=\"" +
         fmt(x2, 2) + "\" y2=\"" + fmt(y2, 2) + "\" " + style + "/>\n";
}

void svg_text(std::string& svg, double x, double y, const std::string& attrs,
              const std::string& text) {
  svg += "<text x=\"" + fmt(x, 2) + "\" y=\"" + fmt(y, 2) +
         "\" font-family=\"sans-serif\" " + attrs + ">" + text + "</text>\n";
}

}  // namespace

void write_bland_altman_svg(const std::filesystem::path& path,
                            const AgreementReport& report) {
  constexpr double kW = 800, kH = 600;
  constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 60;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& pair : report.pairs) {
    const double mean = (pair.reference_ml + pair.predicted_ml) / 2.0;
    const double diff = pair.reference_ml - pair.predicted_ml;
    xmin = std::min(xmin, mean);
    xmax = std::max(xmax, mean);
    ymin = std::min(ymin, diff);
    ymax = std::max(ymax, diff);
  }
  ymin = std::min(ymin, report.loa_low_ml);
  ymax = std::max(ymax, report.loa_high_ml);
  const double xpad = (xmax - xmin) > 0 ? 0.08 * (xmax - xmin) : 1.0;
  const double ypad = (ymax - ymin) > 0 ? 0.12 * (ymax - ymin) : 1.0;
  const LinearScale sx{xmin - xpad, xmax + xpad, kLeft, kW - kRight};
  const LinearScale sy{ymin - ypad, ymax + ypad, kH - kBottom, kTop};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
         "height=\"600\" viewBox=\"0 0 800 600\">\n";
  svg += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";

  const std::string axis_style = "stroke=\"black\" stroke-width=\"1\"";
  svg_line(svg, kLeft, kTop, kLeft, kH - kBottom, axis_style);
  svg_line(svg, kLeft, kH - kBottom, kW - kRight, kH - kBottom, axis_style);

  for (int i = 0; i <= 4; ++i) {
    const double xv = (xmin - xpad) + i * ((xmax + xpad) - (xmin - xpad)) / 4;
    const double px = sx(xv);
    svg_line(svg, px, kH - kBottom, px, kH - kBottom + 5, axis_style);
    svg_text(svg, px, kH - kBottom + 20,
             "font-size=\"12\" text-anchor=\"middle\"", fmt(xv, 1));
    const double yv = (ymin - ypad) + i * ((ymax + ypad) - (ymin - ypad)) / 4;
    const double py = sy(yv);
    svg_line(svg, kLeft - 5, py, kLeft, py, axis_style);
    svg_text(svg, kLeft - 8, py + 4, "font-size=\"12\" text-anchor=\"end\"",
             fmt(yv, 1));
  }

  const std::string dashed =
      "stroke=\"#555555\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"";
  svg_line(svg, kLeft, sy(report.bias_ml), kW - kRight, sy(report.bias_ml),
           "stroke=\"#d62728\" stroke-width=\"1.5\"");
  svg_line(svg, kLeft, sy(report.loa_low_ml), kW - kRight,
           sy(report.loa_low_ml), dashed);
  svg_line(svg, kLeft, sy(report.loa_high_ml), kW - kRight,
           sy(report.loa_high_ml), dashed);
  svg_text(svg, kW - kRight - 4, sy(report.bias_ml) - 5,
           "font-size=\"12\" text-anchor=\"end\" fill=\"#d62728\"",
           "bias " + fmt(report.bias_ml, 2));
  svg_text(svg, kW - kRight - 4, sy(report.loa_low_ml) + 14,
           "font-size=\"12\" text-anchor=\"end\" fill=\"#555555\"",
           "-1.96 sd " + fmt(report.loa_low_ml, 2));
  svg_text(svg, kW - kRight - 4, sy(report.loa_high_ml) - 5,
           "font-size=\"12\" text-anchor=\"end\" fill=\"#555555\"",
           "+1.96 sd " + fmt(report.loa_high_ml, 2));

  for (const auto& pair : report.pairs) {
    const double mean = (pair.reference_ml + pair.predicted_ml) / 2.0;
    const double diff = pair.reference_ml - pair.predicted_ml;
    svg += "<circle cx=\"" + fmt(sx(mean), 2) + "\" cy=\"" +
           fmt(sy(diff), 2) +
           "\" r=\"4\" fill=\"#1f77b4\" fill-opacity=\"0.8\"/>\n";
  }

  svg_text(svg, kW / 2, 28, "font-size=\"16\" text-anchor=\"middle\"",
           "Volume agreement (difference = reference - predicted)");
  svg_text(svg, (kLeft + kW - kRight) / 2, kH - 18,
           "font-size=\"13\" text-anchor=\"middle\"",
           "mean of reference and predicted (mL)");
  svg += "<text x=\"22\" y=\"" + fmt((kTop + kH - kBottom) / 2, 2) +
         "\" font-family=\"sans-serif\" font-size=\"13\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 22 " +
         fmt((kTop + kH - kBottom) / 2, 2) + ")\">reference - predicted "
         "(mL)</text>\n";
  svg += "</svg>\n";
  write_text_file(path, svg);
}

}  // namespace pvol
