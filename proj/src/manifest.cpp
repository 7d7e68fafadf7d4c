#include "pvol/manifest.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "pvol/pgm.hpp"

namespace pvol {
namespace {

using nlohmann::json;

std::string ctx(const std::string& patient, const char* field) {
  return "patient \"" + patient + "\", field \"" + field + "\": ";
}

SweepRef parse_sweep_ref(const json& j, const std::filesystem::path& base,
                         const std::string& patient, const char* field) {
  if (!j.is_object())
    throw ParseError(ctx(patient, field) + "expected an object");
  SweepRef ref;
  if (!j.contains("dir") || !j["dir"].is_string())
    throw ParseError(ctx(patient, field) + "missing string \"dir\"");
  ref.dir = base / j["dir"].get<std::string>();
  if (!j.contains("files") || !j["files"].is_array() || j["files"].empty())
    throw ParseError(ctx(patient, field) + "missing non-empty \"files\" list");
  for (const auto& f : j["files"]) {
    if (!f.is_string())
      throw ParseError(ctx(patient, field) + "file entries must be strings");
    ref.files.push_back(f.get<std::string>());
  }
  if (!j.contains("spacing_mm"))
    throw ValidationError(ctx(patient, field) +
                          "missing \"spacing_mm\" (spacing is never guessed)");
  const auto& sp = j["spacing_mm"];
  if (!sp.is_array() || sp.size() != 2 || !sp[0].is_number() ||
      !sp[1].is_number())
    throw ParseError(ctx(patient, field) +
                     "\"spacing_mm\" must be [dx_mm, dy_mm]");
  ref.spacing = {sp[0].get<double>(), sp[1].get<double>()};
  try {
    ref.spacing.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(ctx(patient, field) + e.what());
  }
  return ref;
}

std::vector<SweepRef> parse_sweep_refs(const json& j,
                                       const std::filesystem::path& base,
                                       const std::string& patient,
                                       const char* field) {
  std::vector<SweepRef> refs;
  if (j.is_array()) {
    for (const auto& item : j)
      refs.push_back(parse_sweep_ref(item, base, patient, field));
  } else {
    refs.push_back(parse_sweep_ref(j, base, patient, field));
  }
  return refs;
}

json sweep_ref_json(const SweepRef& ref, const std::filesystem::path& base) {
  json j;
  j["dir"] = std::filesystem::relative(ref.dir, base).generic_string();
  j["files"] = ref.files;
  j["spacing_mm"] = {ref.spacing.dx_mm, ref.spacing.dy_mm};
  return j;
}

}  // namespace

std::vector<PatientRecord> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open manifest: " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("manifest " + path.string() + ": " + e.what());
  }

  if (!doc.is_object() || !doc.contains("patients") ||
      !doc["patients"].is_array())
    throw ParseError("manifest must be an object with a \"patients\" array");

  const std::filesystem::path base = path.parent_path();
  std::vector<PatientRecord> records;
  std::set<std::string> seen;
  for (const auto& p : doc["patients"]) {
    if (!p.is_object() || !p.contains("id") || !p["id"].is_string())
      throw ParseError("patient entry " + std::to_string(records.size()) +
                       ": missing string \"id\"");
    PatientRecord rec;
    rec.id = p["id"].get<std::string>();
    if (!seen.insert(rec.id).second)
      throw ValidationError("duplicate patient_id \"" + rec.id + "\"");

    if (p.contains("axial_pred"))
      rec.axial_pred = parse_sweep_refs(p["axial_pred"], base, rec.id,
                                        "axial_pred");
    if (p.contains("sagittal_pred"))
      rec.sagittal_pred = parse_sweep_refs(p["sagittal_pred"], base, rec.id,
                                           "sagittal_pred");
    if (p.contains("axial_gt"))
      rec.axial_gt = parse_sweep_ref(p["axial_gt"], base, rec.id, "axial_gt");
    if (p.contains("sagittal_gt"))
      rec.sagittal_gt =
          parse_sweep_ref(p["sagittal_gt"], base, rec.id, "sagittal_gt");
    if (p.contains("reference_volume_ml")) {
      if (!p["reference_volume_ml"].is_number())
        throw ParseError(ctx(rec.id, "reference_volume_ml") +
                         "must be a number");
      const double v = p["reference_volume_ml"].get<double>();
      if (!(v > 0.0))
        throw ValidationError(ctx(rec.id, "reference_volume_ml") +
                              "must be positive");
      rec.reference_volume_ml = v;
    }
    if (p.contains("observers")) {
      if (!p["observers"].is_array())
        throw ParseError(ctx(rec.id, "observers") + "must be an array");
      for (const auto& o : p["observers"]) {
        ObserverSet set;
        if (o.contains("axial"))
          set.axial = parse_sweep_ref(o["axial"], base, rec.id, "observers");
        if (o.contains("sagittal"))
          set.sagittal =
              parse_sweep_ref(o["sagittal"], base, rec.id, "observers");
        if (!set.axial && !set.sagittal)
          throw ParseError(ctx(rec.id, "observers") +
                           "entry has neither \"axial\" nor \"sagittal\"");
        // Observer delineations must cover the same frames as the primary
        // ground truth of their plane.
        if (set.axial && rec.axial_gt &&
            set.axial->files.size() != rec.axial_gt->files.size())
          throw ValidationError(ctx(rec.id, "observers") +
                                "axial frame count differs from axial_gt");
        if (set.sagittal && rec.sagittal_gt &&
            set.sagittal->files.size() != rec.sagittal_gt->files.size())
          throw ValidationError(
              ctx(rec.id, "observers") +
              "sagittal frame count differs from sagittal_gt");
        rec.observers.push_back(std::move(set));
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void write_manifest(const std::filesystem::path& path,
                    const std::vector<PatientRecord>& records) {
  const std::filesystem::path base = path.parent_path();
  json doc;
  doc["patients"] = json::array();
  for (const auto& rec : records) {
    json p;
    p["id"] = rec.id;
    if (rec.axial_pred.size() == 1)
      p["axial_pred"] = sweep_ref_json(rec.axial_pred[0], base);
    else if (!rec.axial_pred.empty()) {
      p["axial_pred"] = json::array();
      for (const auto& r : rec.axial_pred)
        p["axial_pred"].push_back(sweep_ref_json(r, base));
    }
    if (rec.sagittal_pred.size() == 1)
      p["sagittal_pred"] = sweep_ref_json(rec.sagittal_pred[0], base);
    else if (!rec.sagittal_pred.empty()) {
      p["sagittal_pred"] = json::array();
      for (const auto& r : rec.sagittal_pred)
        p["sagittal_pred"].push_back(sweep_ref_json(r, base));
    }
    if (rec.axial_gt) p["axial_gt"] = sweep_ref_json(*rec.axial_gt, base);
    if (rec.sagittal_gt)
      p["sagittal_gt"] = sweep_ref_json(*rec.sagittal_gt, base);
    if (rec.reference_volume_ml)
      p["reference_volume_ml"] = *rec.reference_volume_ml;
    if (!rec.observers.empty()) {
      p["observers"] = json::array();
      for (const auto& o : rec.observers) {
        json oj;
        if (o.axial) oj["axial"] = sweep_ref_json(*o.axial, base);
        if (o.sagittal) oj["sagittal"] = sweep_ref_json(*o.sagittal, base);
        p["observers"].push_back(oj);
      }
    }
    doc["patients"].push_back(p);
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ParseError("cannot write manifest: " + path.string());
  out << doc.dump(2) << "\n";
}

Sweep load_sweep(const SweepRef& ref, const std::string& patient_id,
                 PlaneKind plane) {
  if (ref.files.empty())
    throw ValidationError("sweep reference lists no frame files");
  std::vector<FrameMask> frames;
  frames.reserve(ref.files.size());
  for (std::size_t i = 0; i < ref.files.size(); ++i) {
    FrameMask mask = read_mask_file(ref.dir / ref.files[i], ref.spacing);
    if (!frames.empty() && !mask.same_grid(frames.front()))
      throw ValidationError("frame " + std::to_string(i) + " (" +
                            ref.files[i] +
                            ") disagrees on dimensions or spacing");
    frames.push_back(std::move(mask));
  }
  return Sweep(patient_id, plane, std::move(frames), ref.dir.string());
}

}  // namespace pvol
