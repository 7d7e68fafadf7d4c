#include <doctest.h>

#include <fstream>

#include "pvol/errors.hpp"
#include "pvol/manifest.hpp"
#include "pvol/pgm.hpp"
#include "pvol/phantom.hpp"
#include "pvol/raster.hpp"
#include "support.hpp"

using namespace pvol;

namespace {

void write(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

const char* kTwoPatients = R"({
  "patients": [
    {
      "id": "P01",
      "axial_pred": {"dir": "p01/ax", "files": ["a.pgm", "b.pgm"],
                     "spacing_mm": [0.4, 0.5]},
      "sagittal_pred": {"dir": "p01/sag", "files": ["a.pgm"],
                        "spacing_mm": [0.4, 0.5]},
      "reference_volume_ml": 31.4
    },
    {
      "id": "P02",
      "axial_pred": [{"dir": "p02/ax0", "files": ["a.pgm"],
                      "spacing_mm": [0.4, 0.4]},
                     {"dir": "p02/ax1", "files": ["a.pgm"],
                      "spacing_mm": [0.4, 0.4]}]
    }
  ]
})";

}  // namespace

TEST_CASE("manifest parsing: optional fields stay absent") {
  test::TempDir tmp;
  write(tmp.path() / "manifest.json", kTwoPatients);
  const auto records = load_manifest(tmp.path() / "manifest.json");
  REQUIRE(records.size() == 2);

  CHECK(records[0].id == "P01");
  CHECK(records[0].reference_volume_ml == 31.4);
  CHECK(records[0].axial_pred.size() == 1);
  CHECK(records[0].axial_pred[0].files ==
        std::vector<std::string>{"a.pgm", "b.pgm"});
  CHECK(records[0].axial_pred[0].spacing == PixelSpacing{0.4, 0.5});
  CHECK(records[0].axial_pred[0].dir == tmp.path() / "p01/ax");
  CHECK_FALSE(records[0].axial_gt.has_value());
  CHECK(records[0].observers.empty());

  CHECK_FALSE(records[1].reference_volume_ml.has_value());
  CHECK(records[1].axial_pred.size() == 2);  // array form
  CHECK(records[1].sagittal_pred.empty());
}

TEST_CASE("manifest parsing: empty patient list") {
  test::TempDir tmp;
  write(tmp.path() / "manifest.json", R"({"patients": []})");
  CHECK(load_manifest(tmp.path() / "manifest.json").empty());
}

TEST_CASE("manifest parsing: failures carry context") {
  test::TempDir tmp;
  const auto path = tmp.path() / "manifest.json";

  SUBCASE("duplicate ids") {
    write(path, R"({"patients": [{"id": "P07"}, {"id": "P07"}]})");
    try {
      load_manifest(path);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("P07") != std::string::npos);
    }
  }
  SUBCASE("missing spacing") {
    write(path, R"({"patients": [{"id": "P01",
      "axial_pred": {"dir": "d", "files": ["a.pgm"]}}]})");
    try {
      load_manifest(path);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("spacing") != std::string::npos);
      CHECK(std::string(e.what()).find("axial_pred") != std::string::npos);
    }
  }
  SUBCASE("malformed json") {
    write(path, "{\"patients\": [");
    CHECK_THROWS_AS(load_manifest(path), ParseError);
  }
  SUBCASE("non-positive reference volume") {
    write(path,
          R"({"patients": [{"id": "P01", "reference_volume_ml": 0}]})");
    CHECK_THROWS_AS(load_manifest(path), ValidationError);
  }
  SUBCASE("observer frame count mismatch") {
    write(path, R"({"patients": [{"id": "P01",
      "axial_gt": {"dir": "d", "files": ["a.pgm", "b.pgm"],
                   "spacing_mm": [1, 1]},
      "observers": [{"axial": {"dir": "o", "files": ["a.pgm"],
                     "spacing_mm": [1, 1]}}]}]})");
    CHECK_THROWS_AS(load_manifest(path), ValidationError);
  }
}

TEST_CASE("load_sweep reads frames in listed order") {
  test::TempDir tmp;
  const PixelSpacing sp{0.4, 0.4};
  std::filesystem::create_directories(tmp.path() / "sweep");

  // three distinguishable frames
  for (int i = 0; i < 3; ++i) {
    FrameMask m(8, 8, sp);
    for (int c = 0; c <= i; ++c) m.set(0, c, true);
    write_mask_file(tmp.path() / "sweep" /
                        ("f" + std::to_string(i) + ".pgm"),
                    m);
  }
  SweepRef ref;
  ref.dir = tmp.path() / "sweep";
  ref.files = {"f2.pgm", "f0.pgm", "f1.pgm"};
  ref.spacing = sp;

  const Sweep sweep = load_sweep(ref, "P01", PlaneKind::Axial);
  CHECK(sweep.frame_count() == 3);
  CHECK(area_px(sweep.frame(0)) == 3);
  CHECK(area_px(sweep.frame(1)) == 1);
  CHECK(area_px(sweep.frame(2)) == 2);
  CHECK(sweep.spacing() == sp);
}

TEST_CASE("load_sweep rejects mismatched frame dimensions") {
  test::TempDir tmp;
  std::filesystem::create_directories(tmp.path() / "s");
  write_mask_file(tmp.path() / "s/f0.pgm", FrameMask(8, 8, {1, 1}));
  write_mask_file(tmp.path() / "s/f1.pgm", FrameMask(9, 8, {1, 1}));

  SweepRef ref;
  ref.dir = tmp.path() / "s";
  ref.files = {"f0.pgm", "f1.pgm"};
  ref.spacing = {1, 1};
  try {
    load_sweep(ref, "P01", PlaneKind::Axial);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("1") != std::string::npos);
    CHECK(std::string(e.what()).find("f1.pgm") != std::string::npos);
  }
}

TEST_CASE("sweep written to disk round-trips through the manifest") {
  test::TempDir tmp;
  PhantomSpec spec;
  spec.frame_width = spec.frame_height = 120;
  spec.spacing = {0.5, 0.6};
  spec.slice_step_mm = 2.0;
  const Sweep original = generate_sweep(spec, PlaneKind::Axial, "P01");

  // write frames + manifest by hand, then read both back
  std::filesystem::create_directories(tmp.path() / "ax");
  SweepRef ref;
  ref.dir = tmp.path() / "ax";
  ref.spacing = spec.spacing;
  for (std::size_t i = 0; i < original.frame_count(); ++i) {
    const std::string name = "f" + std::to_string(i) + ".pgm";
    write_mask_file(ref.dir / name, original.frame(i));
    ref.files.push_back(name);
  }
  PatientRecord rec;
  rec.id = "P01";
  rec.axial_pred = {ref};
  write_manifest(tmp.path() / "manifest.json", {rec});

  const auto records = load_manifest(tmp.path() / "manifest.json");
  REQUIRE(records.size() == 1);
  REQUIRE(records[0].axial_pred.size() == 1);
  const Sweep loaded =
      load_sweep(records[0].axial_pred[0], "P01", PlaneKind::Axial);
  REQUIRE(loaded.frame_count() == original.frame_count());
  for (std::size_t i = 0; i < loaded.frame_count(); ++i)
    CHECK(loaded.frame(i) == original.frame(i));
}
