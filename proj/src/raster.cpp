#include "pvol/raster.hpp"

#include <algorithm>
#include <string>

#include "pvol/errors.hpp"
#include "pvol/kernels.hpp"

namespace pvol {
namespace {

struct Labeling {
  std::vector<std::int32_t> labels;  // -1 background
  std::vector<std::size_t> sizes;    // indexed by label, first-seen order
};

// 8-connected flood labeling. Components are numbered in row-major order of
// their first pixel, so component 0 has the lexicographically smallest seed.
Labeling label_components(const FrameMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  Labeling out;
  out.labels.assign(static_cast<std::size_t>(w) * h, -1);

  std::vector<std::int64_t> stack;
  for (int r = 0; r < h; ++r) {
    const std::uint8_t* row = mask.row(r);
    for (int c = 0; c < w; ++c) {
      const std::int64_t idx = static_cast<std::int64_t>(r) * w + c;
      if (!row[c] || out.labels[idx] >= 0) continue;
      const std::int32_t label = static_cast<std::int32_t>(out.sizes.size());
      std::size_t size = 0;
      stack.clear();
      stack.push_back(idx);
      out.labels[idx] = label;
      while (!stack.empty()) {
        const std::int64_t cur = stack.back();
        stack.pop_back();
        ++size;
        const int cr = static_cast<int>(cur / w);
        const int cc = static_cast<int>(cur % w);
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            const int nr = cr + dr;
            const int nc = cc + dc;
            if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
            const std::int64_t nidx = static_cast<std::int64_t>(nr) * w + nc;
            if (mask.row(nr)[nc] && out.labels[nidx] < 0) {
              out.labels[nidx] = label;
              stack.push_back(nidx);
            }
          }
        }
      }
      out.sizes.push_back(size);
    }
  }
  return out;
}

int argmax_component(const Labeling& l) {
  int best = -1;
  std::size_t best_size = 0;
  for (std::size_t i = 0; i < l.sizes.size(); ++i) {
    if (l.sizes[i] > best_size) {
      best_size = l.sizes[i];
      best = static_cast<int>(i);
    }
  }
  return best;
}

// Clockwise Moore neighbourhood in image coordinates (y down), starting west.
constexpr int kRing[8][2] = {{0, -1}, {-1, -1}, {-1, 0}, {-1, 1},
                             {0, 1},  {1, 1},   {1, 0},  {1, -1}};

int ring_index(int dr, int dc) {
  for (int i = 0; i < 8; ++i)
    if (kRing[i][0] == dr && kRing[i][1] == dc) return i;
  return -1;
}

}  // namespace

std::size_t area_px(const FrameMask& mask) {
  return kernels::count_nonzero(mask.pixels().data(), mask.size());
}

int component_count(const FrameMask& mask) {
  return static_cast<int>(label_components(mask).sizes.size());
}

std::size_t largest_component_area(const FrameMask& mask) {
  const Labeling l = label_components(mask);
  const int best = argmax_component(l);
  return best < 0 ? 0 : l.sizes[best];
}

FrameMask largest_component(const FrameMask& mask) {
  const Labeling l = label_components(mask);
  const int best = argmax_component(l);
  FrameMask out(mask.width(), mask.height(), mask.spacing());
  if (best < 0) return out;
  for (int r = 0; r < mask.height(); ++r) {
    std::uint8_t* orow = out.row(r);
    const std::int32_t* lrow =
        l.labels.data() + static_cast<std::size_t>(r) * mask.width();
    for (int c = 0; c < mask.width(); ++c) orow[c] = lrow[c] == best ? 1 : 0;
  }
  return out;
}

FrameMask boundary_mask(const FrameMask& mask) {
  const int h = mask.height();
  FrameMask out(mask.width(), h, mask.spacing());
  for (int r = 0; r < h; ++r) {
    kernels::boundary_row(r > 0 ? mask.row(r - 1) : nullptr, mask.row(r),
                          r + 1 < h ? mask.row(r + 1) : nullptr,
                          static_cast<std::size_t>(mask.width()), out.row(r));
  }
  return out;
}

Contour extract_contour(const FrameMask& mask) {
  const FrameMask blob = largest_component(mask);
  const std::size_t area = area_px(blob);
  if (area < 3)
    throw DegenerateMaskError(
        "largest component has " + std::to_string(area) +
        " foreground pixels; need at least 3 to trace a perimeter");

  const int w = blob.width();
  const int h = blob.height();
  int sr = -1, sc = -1;
  for (int r = 0; r < h && sr < 0; ++r) {
    const std::uint8_t* row = blob.row(r);
    for (int c = 0; c < w; ++c) {
      if (row[c]) {
        sr = r;
        sc = c;
        break;
      }
    }
  }

  const auto fg = [&](int r, int c) {
    return r >= 0 && r < h && c >= 0 && c < w && blob.at(r, c);
  };
  const double dx = blob.spacing().dx_mm;
  const double dy = blob.spacing().dy_mm;

  Contour contour;
  contour.points_mm.push_back({sc * dx, sr * dy});

  int cr = sr, cc = sc;
  int prev_dir = 0;  // backtrack west of the start pixel: background,
                     // because the start is the first row-major pixel
  int first_r = -1, first_c = -1, first_dir = -1;
  bool closed = false;
  const std::size_t cap = 8 * area + 16;
  for (std::size_t iter = 0; iter < cap; ++iter) {
    int dir = -1;
    for (int step = 1; step <= 8; ++step) {
      const int d = (prev_dir + step) & 7;
      if (fg(cr + kRing[d][0], cc + kRing[d][1])) {
        dir = d;
        break;
      }
    }
    if (dir < 0)
      throw DegenerateMaskError("isolated pixel encountered during trace");

    const int bg_d = (dir + 7) & 7;  // scanned just before dir: background
    const int bg_r = cr + kRing[bg_d][0];
    const int bg_c = cc + kRing[bg_d][1];
    cr += kRing[dir][0];
    cc += kRing[dir][1];
    prev_dir = ring_index(bg_r - cr, bg_c - cc);

    if (first_dir < 0) {
      first_r = cr;
      first_c = cc;
      first_dir = prev_dir;
    } else if (cr == first_r && cc == first_c && prev_dir == first_dir) {
      closed = true;  // first move re-entered in the same state
      break;
    }
    contour.points_mm.push_back({cc * dx, cr * dy});
  }
  if (!closed) throw DegenerateMaskError("contour trace failed to close");

  // The closing step lands back on the start; drop the duplicate.
  if (contour.points_mm.size() > 1 &&
      contour.points_mm.back() == contour.points_mm.front())
    contour.points_mm.pop_back();
  return contour;
}

}  // namespace pvol
