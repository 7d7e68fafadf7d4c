#include <doctest.h>

#include <cmath>
#include <random>

#include "pvol/errors.hpp"
#include "pvol/metrics.hpp"
#include "pvol/raster.hpp"
#include "support.hpp"

using namespace pvol;

namespace {

FrameMask single_pixel(int w, int h, PixelSpacing sp, int r, int c) {
  FrameMask m(w, h, sp);
  m.set(r, c, true);
  return m;
}

Sweep one_frame_sweep(FrameMask mask, PlaneKind plane = PlaneKind::Axial) {
  std::vector<FrameMask> frames;
  frames.push_back(std::move(mask));
  return Sweep("p", plane, std::move(frames), "test");
}

}  // namespace

TEST_CASE("dice basics") {
  std::mt19937_64 rng(1);
  const FrameMask a = test::random_nonempty_mask(rng, 16, 16, {1, 1}, 0.3);
  CHECK(dice(a, a) == 1.0);

  // disjoint nonempty masks
  const FrameMask left = single_pixel(8, 8, {1, 1}, 3, 1);
  const FrameMask right = single_pixel(8, 8, {1, 1}, 3, 6);
  CHECK(dice(left, right) == 0.0);

  // both empty -> 1, one empty -> 0
  const FrameMask empty(8, 8, {1, 1});
  CHECK(dice(empty, empty) == 1.0);
  CHECK(dice(empty, left) == 0.0);

  // |A| = |B| = 8, |A^B| = 4 -> 0.5
  FrameMask x(8, 8, {1, 1}), y(8, 8, {1, 1});
  for (int c = 0; c < 8; ++c) x.set(0, c, true);
  for (int c = 4; c < 8; ++c) y.set(0, c, true);
  for (int c = 0; c < 4; ++c) y.set(1, c, true);
  CHECK(dice(x, y) == 0.5);

  CHECK_THROWS_AS(dice(a, FrameMask(15, 16, {1, 1})), AlignmentError);
  CHECK_THROWS_AS(dice(a, FrameMask(16, 16, {1, 2})), AlignmentError);
}

TEST_CASE("hausdorff of single pixels is the euclidean distance") {
  const FrameMask a = single_pixel(8, 8, {1, 1}, 0, 0);
  const FrameMask b = single_pixel(8, 8, {1, 1}, 4, 3);  // dy=4, dx=3
  CHECK(hausdorff_mm(a, b) == 5.0);
  CHECK(hausdorff_bruteforce_mm(a, b) == 5.0);
  CHECK(hausdorff_mm(a, a) == 0.0);

  // anisotropic spacing
  const FrameMask c = single_pixel(8, 8, {2, 0.5}, 0, 0);
  const FrameMask d = single_pixel(8, 8, {2, 0.5}, 4, 3);
  CHECK(hausdorff_mm(c, d) == std::sqrt(9.0 * 4.0 + 16.0 * 0.25));
}

TEST_CASE("hausdorff is undefined for empty masks") {
  const FrameMask empty(8, 8, {1, 1});
  const FrameMask a = single_pixel(8, 8, {1, 1}, 1, 1);
  CHECK_THROWS_AS(hausdorff_mm(a, empty), UndefinedDistanceError);
  CHECK_THROWS_AS(hausdorff_mm(empty, empty), UndefinedDistanceError);
  CHECK_THROWS_AS(hausdorff_bruteforce_mm(empty, a), UndefinedDistanceError);
}

TEST_CASE("asymmetric directed distances take the max") {
  // A = {(0,0)}, B = {(0,0), (0,5)}: d(A->B) = 0, d(B->A) = 5
  const FrameMask a = single_pixel(8, 8, {1, 1}, 0, 0);
  FrameMask b = single_pixel(8, 8, {1, 1}, 0, 0);
  b.set(0, 5, true);
  CHECK(hausdorff_bruteforce_mm(a, b) == 5.0);
  CHECK(hausdorff_mm(a, b) == 5.0);
}

TEST_CASE("edt hausdorff equals the brute-force oracle exactly") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 120; ++iter) {
    const int w = 4 + static_cast<int>(rng() % 29);
    const int h = 4 + static_cast<int>(rng() % 29);
    const PixelSpacing sp{test::uniform(rng, 0.2, 2.0),
                          test::uniform(rng, 0.2, 2.0)};
    const FrameMask a = test::random_nonempty_mask(rng, w, h, sp, 0.2);
    const FrameMask b = test::random_nonempty_mask(rng, w, h, sp, 0.2);
    const double fast = hausdorff_mm(a, b);
    const double slow = hausdorff_bruteforce_mm(a, b);
    CHECK(fast == slow);
  }
}

TEST_CASE("metric axioms: symmetry, identity, translation invariance") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    const PixelSpacing sp{test::uniform(rng, 0.2, 1.5),
                          test::uniform(rng, 0.2, 1.5)};
    // content restricted to the interior so small translations stay in frame
    FrameMask a(24, 24, sp), b(24, 24, sp);
    for (int r = 4; r < 20; ++r)
      for (int c = 4; c < 20; ++c) {
        if (rng() % 5 == 0) a.set(r, c, true);
        if (rng() % 5 == 0) b.set(r, c, true);
      }
    if (area_px(a) == 0 || area_px(b) == 0) continue;

    CHECK(dice(a, b) == dice(b, a));
    CHECK(hausdorff_mm(a, b) == hausdorff_mm(b, a));
    CHECK(dice(a, a) == 1.0);
    CHECK(hausdorff_mm(a, a) == 0.0);

    const int dr = static_cast<int>(rng() % 9) - 4;
    const int dc = static_cast<int>(rng() % 9) - 4;
    const FrameMask at = test::translate(a, dr, dc);
    const FrameMask bt = test::translate(b, dr, dc);
    CHECK(dice(at, bt) == dice(a, b));
    CHECK(hausdorff_mm(at, bt) == hausdorff_mm(a, b));

    const double diag = std::hypot(23 * sp.dx_mm, 23 * sp.dy_mm);
    CHECK(hausdorff_mm(a, b) <= diag);
  }
}

TEST_CASE("sweep metrics on identical sweeps are perfect") {
  std::mt19937_64 rng(3);
  std::vector<FrameMask> frames;
  frames.emplace_back(16, 16, PixelSpacing{1, 1});
  frames.push_back(test::disk_mask(16, 16, {1, 1}, 8, 8, 3));
  frames.push_back(test::disk_mask(16, 16, {1, 1}, 8, 8, 5));
  frames.push_back(test::disk_mask(16, 16, {1, 1}, 8, 8, 2));
  const Sweep gt("p", PlaneKind::Axial, frames, "test");
  const Sweep pred("p", PlaneKind::Axial, frames, "test");

  const SweepMetrics m = sweep_metrics(pred, gt);
  CHECK(m.dice_mean == 1.0);
  CHECK(m.dice_midplane == 1.0);
  CHECK(m.midplane_index == 2);
  REQUIRE(m.hd_midplane_mm.has_value());
  CHECK(*m.hd_midplane_mm == 0.0);
  CHECK(m.per_frame_dice.size() == 4);
}

TEST_CASE("dilated prediction keeps midplane hausdorff below sqrt(2)") {
  std::vector<FrameMask> gt_frames, pred_frames;
  gt_frames.push_back(test::disk_mask(32, 32, {1, 1}, 16, 16, 6));
  pred_frames.push_back(test::dilate8(gt_frames[0]));
  const Sweep gt("p", PlaneKind::Axial, std::move(gt_frames), "test");
  const Sweep pred("p", PlaneKind::Axial, std::move(pred_frames), "test");
  const SweepMetrics m = sweep_metrics(pred, gt);
  REQUIRE(m.hd_midplane_mm.has_value());
  CHECK(*m.hd_midplane_mm <= std::sqrt(2.0));
  CHECK(*m.hd_midplane_mm > 0.0);
}

TEST_CASE("empty prediction on the midplane leaves HD undefined") {
  std::vector<FrameMask> gt_frames, pred_frames;
  gt_frames.push_back(test::disk_mask(16, 16, {1, 1}, 8, 8, 4));
  pred_frames.emplace_back(16, 16, PixelSpacing{1, 1});
  const Sweep gt("p", PlaneKind::Axial, std::move(gt_frames), "test");
  const Sweep pred("p", PlaneKind::Axial, std::move(pred_frames), "test");
  const SweepMetrics m = sweep_metrics(pred, gt);
  CHECK(m.dice_midplane == 0.0);
  CHECK_FALSE(m.hd_midplane_mm.has_value());
}

TEST_CASE("frame count mismatch is an alignment error") {
  const Sweep gt = one_frame_sweep(test::disk_mask(16, 16, {1, 1}, 8, 8, 4));
  std::vector<FrameMask> two(2, test::disk_mask(16, 16, {1, 1}, 8, 8, 4));
  const Sweep pred("p", PlaneKind::Axial, std::move(two), "test");
  CHECK_THROWS_AS(sweep_metrics(pred, gt), AlignmentError);
}

TEST_CASE("midplane source flag anchors on the chosen sweep") {
  std::vector<FrameMask> gt_frames, pred_frames;
  gt_frames.push_back(test::disk_mask(24, 24, {1, 1}, 12, 12, 6));
  gt_frames.push_back(test::disk_mask(24, 24, {1, 1}, 12, 12, 3));
  pred_frames.push_back(test::disk_mask(24, 24, {1, 1}, 12, 12, 3));
  pred_frames.push_back(test::disk_mask(24, 24, {1, 1}, 12, 12, 6));
  const Sweep gt("p", PlaneKind::Axial, std::move(gt_frames), "test");
  const Sweep pred("p", PlaneKind::Axial, std::move(pred_frames), "test");

  CHECK(sweep_metrics(pred, gt, MidplaneSource::GroundTruth).midplane_index ==
        0);
  CHECK(sweep_metrics(pred, gt, MidplaneSource::Prediction).midplane_index ==
        1);
}

TEST_CASE("interobserver means the per-observer metrics") {
  // reference: 10-pixel row; observers built for dice 1.0 / 0.9 / 0.8
  FrameMask ref(16, 16, {1, 1});
  for (int c = 0; c < 10; ++c) ref.set(8, c, true);

  FrameMask obs2(16, 16, {1, 1});  // 9 overlap + 1 stray: dice 18/20
  for (int c = 0; c < 9; ++c) obs2.set(8, c, true);
  obs2.set(0, 15, true);

  FrameMask obs3(16, 16, {1, 1});  // 8 overlap + 2 stray: dice 16/20
  for (int c = 0; c < 8; ++c) obs3.set(8, c, true);
  obs3.set(0, 14, true);
  obs3.set(0, 15, true);

  const Sweep ref_sweep = one_frame_sweep(ref);
  const std::vector<Sweep> observers = {one_frame_sweep(ref),
                                        one_frame_sweep(obs2),
                                        one_frame_sweep(obs3)};

  const SweepMetrics identical = interobserver({observers.data(), 1},
                                               ref_sweep);
  CHECK(identical.dice_mean == 1.0);
  CHECK(identical.dice_midplane == 1.0);
  CHECK(*identical.hd_midplane_mm == 0.0);

  const SweepMetrics mean = interobserver(observers, ref_sweep);
  CHECK(mean.dice_midplane == doctest::Approx(0.9).epsilon(1e-12));

  CHECK_THROWS_AS(interobserver({observers.data(), 0}, ref_sweep),
                  InputError);
}
