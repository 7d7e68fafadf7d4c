#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "pvol/errors.hpp"
#include "pvol/raster.hpp"
#include "support.hpp"

using namespace pvol;

namespace {

FrameMask from_rows(const std::vector<std::string>& rows,
                    PixelSpacing sp = {1, 1}) {
  FrameMask m(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()),
              sp);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      if (rows[r][c] == '#') m.set(static_cast<int>(r), static_cast<int>(c),
                                   true);
  return m;
}

}  // namespace

TEST_CASE("area counts foreground pixels") {
  CHECK(area_px(FrameMask(8, 8, {1, 1})) == 0);

  FrameMask full(10, 10, {1, 1});
  for (int r = 0; r < 10; ++r)
    for (int c = 0; c < 10; ++c) full.set(r, c, true);
  CHECK(area_px(full) == 100);

  // 4x4 checkerboard has 8 set pixels
  FrameMask checker(4, 4, {1, 1});
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if ((r + c) % 2 == 0) checker.set(r, c, true);
  CHECK(area_px(checker) == 8);
}

TEST_CASE("largest component keeps the biggest blob") {
  const FrameMask m = from_rows({
      "####....",
      "####....",
      "####....",
      "####....",
      "........",
      "....##..",
      "....##..",
      "......#.",
  });
  CHECK(component_count(m) == 2);  // (7,6) joins the 2x2 blob diagonally
  const FrameMask big = largest_component(m);
  CHECK(area_px(big) == 16);
  CHECK(big.at(0, 0));
  CHECK_FALSE(big.at(5, 4));
}

TEST_CASE("largest component is identity for one blob") {
  const FrameMask m = from_rows({"..##", "..##", "...."});
  CHECK(largest_component(m) == m);
  CHECK(largest_component(FrameMask(4, 4, {1, 1})) ==
        FrameMask(4, 4, {1, 1}));
}

TEST_CASE("largest component ties break on the first seed") {
  // two 4-pixel blobs; seeds (0,0) and (4,4)
  const FrameMask m = from_rows({
      "##......",
      "##......",
      "........",
      "........",
      "....##..",
      "....##..",
  });
  const FrameMask kept = largest_component(m);
  CHECK(kept.at(0, 0));
  CHECK_FALSE(kept.at(4, 4));
}

TEST_CASE("largest component area never exceeds total area") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 60; ++i) {
    const FrameMask m = test::random_mask(rng, 24, 16, {1, 1}, 0.3);
    const std::size_t total = area_px(m);
    const std::size_t largest = largest_component_area(m);
    CHECK(largest <= total);
    CHECK((largest == total) == (component_count(m) <= 1));
  }
}

TEST_CASE("boundary mask marks pixels with a background 4-neighbour") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const int w = 1 + static_cast<int>(rng() % 40);
    const int h = 1 + static_cast<int>(rng() % 30);
    const FrameMask m = test::random_mask(rng, w, h, {1, 1}, 0.5);
    const FrameMask b = boundary_mask(m);
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        const auto bg = [&](int rr, int cc) {
          return rr < 0 || rr >= h || cc < 0 || cc >= w || !m.at(rr, cc);
        };
        const bool expect = m.at(r, c) && (bg(r - 1, c) || bg(r + 1, c) ||
                                           bg(r, c - 1) || bg(r, c + 1));
        CHECK(b.at(r, c) == expect);
      }
    }
  }
}

TEST_CASE("contour of a filled 3x3 square is the 8-pixel ring") {
  const FrameMask m = from_rows({"###", "###", "###"});
  const Contour ct = extract_contour(m);
  REQUIRE(ct.points_mm.size() == 8);
  const std::vector<std::array<double, 2>> expected = {
      {0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};
  CHECK(ct.points_mm == expected);
  CHECK(ct.closed);
}

TEST_CASE("contour rejects degenerate masks") {
  FrameMask one(5, 5, {1, 1});
  CHECK_THROWS_AS(extract_contour(one), DegenerateMaskError);
  one.set(2, 2, true);
  CHECK_THROWS_AS(extract_contour(one), DegenerateMaskError);
  one.set(2, 3, true);
  CHECK_THROWS_AS(extract_contour(one), DegenerateMaskError);
  one.set(2, 4, true);  // 3 pixels: traceable
  CHECK_NOTHROW(extract_contour(one));
}

TEST_CASE("contour of a disk has a plausible perimeter length") {
  const FrameMask disk = test::disk_mask(64, 64, {1, 1}, 32, 32, 20);
  const Contour ct = extract_contour(disk);
  CHECK(ct.points_mm.size() >= 4 * 20);
  CHECK(ct.points_mm.size() <=
        static_cast<std::size_t>(2 * 3.14159265 * 20 * 1.5));
}

TEST_CASE("contour points are boundary pixels walked in 8-neighbour steps") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    FrameMask m = test::random_mask(rng, 24, 20, {0.5, 0.25}, 0.35);
    if (largest_component_area(m) < 3) continue;
    const FrameMask blob = largest_component(m);
    const FrameMask boundary = boundary_mask(blob);
    const Contour ct = extract_contour(m);
    REQUIRE(ct.points_mm.size() >= 3);
    for (std::size_t j = 0; j < ct.points_mm.size(); ++j) {
      const int c = static_cast<int>(std::lround(ct.points_mm[j][0] / 0.5));
      const int r = static_cast<int>(std::lround(ct.points_mm[j][1] / 0.25));
      CHECK(blob.at(r, c));
      CHECK(boundary.at(r, c));
      // consecutive points (wrapping) are 8-neighbours in pixel space
      const auto& next = ct.points_mm[(j + 1) % ct.points_mm.size()];
      const int nc = static_cast<int>(std::lround(next[0] / 0.5));
      const int nr = static_cast<int>(std::lround(next[1] / 0.25));
      CHECK(std::abs(nc - c) <= 1);
      CHECK(std::abs(nr - r) <= 1);
      CHECK((nc != c || nr != r));
    }
  }
}
