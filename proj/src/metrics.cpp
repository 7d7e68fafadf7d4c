#include "pvol/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "pvol/errors.hpp"
#include "pvol/kernels.hpp"
#include "pvol/raster.hpp"
#include "pvol/volumetry.hpp"

namespace pvol {
namespace {

void require_same_grid(const FrameMask& a, const FrameMask& b) {
  if (!a.same_grid(b))
    throw AlignmentError("masks disagree on dimensions or spacing");
}

struct BoundaryPoints {
  std::vector<int> rows;
  std::vector<int> cols;
};

BoundaryPoints boundary_points(const FrameMask& mask) {
  const FrameMask b = boundary_mask(mask);
  BoundaryPoints out;
  for (int r = 0; r < b.height(); ++r) {
    const std::uint8_t* row = b.row(r);
    for (int c = 0; c < b.width(); ++c) {
      if (row[c]) {
        out.rows.push_back(r);
        out.cols.push_back(c);
      }
    }
  }
  return out;
}

// Squared physical distance from integer pixel deltas. Both Hausdorff routes
// funnel through this exact expression so their results agree bitwise.
inline double dist2_mm(std::int64_t dr, std::int64_t dc, double dx2,
                       double dy2) {
  return static_cast<double>(dc * dc) * dx2 + static_cast<double>(dr * dr) *
                                                  dy2;
}

double directed_max_bruteforce(const BoundaryPoints& from,
                               const BoundaryPoints& to, double dx2,
                               double dy2) {
  double worst = 0.0;
  for (std::size_t i = 0; i < from.rows.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to.rows.size(); ++j) {
      const double d2 = dist2_mm(from.rows[i] - to.rows[j],
                                 from.cols[i] - to.cols[j], dx2, dy2);
      if (d2 < best) best = d2;
    }
    if (best > worst) worst = best;
  }
  return worst;
}

// Exact anisotropic EDT of a boundary set. Pass 1 finds, per pixel, the
// nearest boundary row within its column (pure integer sweeps). Pass 2 runs
// the lower-envelope-of-parabolas scan along each row. The reported value is
// re-derived from the winning site's integer deltas via dist2_mm.
struct BoundaryEdt {
  int width = 0;
  int height = 0;
  std::vector<double> dist2;  // squared mm distance to the nearest site

  double at(int r, int c) const {
    return dist2[static_cast<std::size_t>(r) * width + c];
  }
};

BoundaryEdt boundary_edt(const FrameMask& boundary, double dx2, double dy2) {
  const int w = boundary.width();
  const int h = boundary.height();
  constexpr int kNone = std::numeric_limits<int>::min();

  // Nearest boundary row per (row, column); kNone where the column is empty.
  std::vector<int> near_row(static_cast<std::size_t>(w) * h, kNone);
  for (int c = 0; c < w; ++c) {
    int last = kNone;
    for (int r = 0; r < h; ++r) {
      if (boundary.at(r, c)) last = r;
      if (last != kNone) near_row[static_cast<std::size_t>(r) * w + c] = last;
    }
    last = kNone;
    for (int r = h - 1; r >= 0; --r) {
      if (boundary.at(r, c)) last = r;
      if (last == kNone) continue;
      int& cur = near_row[static_cast<std::size_t>(r) * w + c];
      if (cur == kNone || std::abs(last - r) < std::abs(cur - r)) cur = last;
    }
  }

  BoundaryEdt out;
  out.width = w;
  out.height = h;
  out.dist2.assign(static_cast<std::size_t>(w) * h,
                   std::numeric_limits<double>::infinity());

  std::vector<int> v(w);       // columns of envelope parabolas
  std::vector<double> z(w + 1);  // envelope breakpoints
  std::vector<double> f(w);      // vertical term per parabola column
  std::vector<int> vdr(w);       // row delta of the parabola's site

  for (int r = 0; r < h; ++r) {
    int k = -1;
    for (int c = 0; c < w; ++c) {
      const int nr = near_row[static_cast<std::size_t>(r) * w + c];
      if (nr == kNone) continue;
      const std::int64_t dr = nr - r;
      const double fc = static_cast<double>(dr * dr) * dy2;
      while (k >= 0) {
        // abscissa where parabola at column c overtakes the one at v[k]
        const double s =
            (fc + static_cast<double>(c) * c * dx2 -
             (f[k] + static_cast<double>(v[k]) * v[k] * dx2)) /
            (2.0 * dx2 * (c - v[k]));
        if (s > z[k]) {
          ++k;
          v[k] = c;
          f[k] = fc;
          vdr[k] = static_cast<int>(dr);
          z[k] = s;
          break;
        }
        --k;
      }
      if (k < 0) {
        k = 0;
        v[0] = c;
        f[0] = fc;
        vdr[0] = static_cast<int>(dr);
        z[0] = -std::numeric_limits<double>::infinity();
      }
    }
    if (k < 0) continue;  // no boundary pixel reaches this row's columns

    int idx = 0;
    for (int c = 0; c < w; ++c) {
      while (idx < k && z[idx + 1] < static_cast<double>(c)) ++idx;
      out.dist2[static_cast<std::size_t>(r) * w + c] =
          dist2_mm(vdr[idx], c - v[idx], dx2, dy2);
    }
  }
  return out;
}

double directed_max_edt(const BoundaryPoints& from, const BoundaryEdt& edt) {
  double worst = 0.0;
  for (std::size_t i = 0; i < from.rows.size(); ++i) {
    const double d2 = edt.at(from.rows[i], from.cols[i]);
    if (d2 > worst) worst = d2;
  }
  return worst;
}

void require_nonempty_pair(const FrameMask& a, const FrameMask& b) {
  if (area_px(a) == 0 || area_px(b) == 0)
    throw UndefinedDistanceError(
        "Hausdorff distance is undefined for an empty mask");
}

}  // namespace

double dice(const FrameMask& a, const FrameMask& b) {
  require_same_grid(a, b);
  const std::size_t na = kernels::count_nonzero(a.pixels().data(), a.size());
  const std::size_t nb = kernels::count_nonzero(b.pixels().data(), b.size());
  if (na + nb == 0) return 1.0;
  const std::size_t inter =
      kernels::count_both(a.pixels().data(), b.pixels().data(), a.size());
  return 2.0 * static_cast<double>(inter) / static_cast<double>(na + nb);
}

double hausdorff_mm(const FrameMask& a, const FrameMask& b) {
  require_same_grid(a, b);
  require_nonempty_pair(a, b);
  const double dx2 = a.spacing().dx_mm * a.spacing().dx_mm;
  const double dy2 = a.spacing().dy_mm * a.spacing().dy_mm;

  const FrameMask ba = boundary_mask(a);
  const FrameMask bb = boundary_mask(b);
  const BoundaryPoints pa = boundary_points(a);
  const BoundaryPoints pb = boundary_points(b);
  const BoundaryEdt edt_b = boundary_edt(bb, dx2, dy2);
  const BoundaryEdt edt_a = boundary_edt(ba, dx2, dy2);

  const double worst =
      std::max(directed_max_edt(pa, edt_b), directed_max_edt(pb, edt_a));
  return std::sqrt(worst);
}

double hausdorff_bruteforce_mm(const FrameMask& a, const FrameMask& b) {
  require_same_grid(a, b);
  require_nonempty_pair(a, b);
  const double dx2 = a.spacing().dx_mm * a.spacing().dx_mm;
  const double dy2 = a.spacing().dy_mm * a.spacing().dy_mm;

  const BoundaryPoints pa = boundary_points(a);
  const BoundaryPoints pb = boundary_points(b);
  const double worst = std::max(directed_max_bruteforce(pa, pb, dx2, dy2),
                                directed_max_bruteforce(pb, pa, dx2, dy2));
  return std::sqrt(worst);
}

SweepMetrics sweep_metrics(const Sweep& pred, const Sweep& gt,
                           MidplaneSource source) {
  if (pred.frame_count() != gt.frame_count())
    throw AlignmentError("prediction has " +
                         std::to_string(pred.frame_count()) +
                         " frames but ground truth has " +
                         std::to_string(gt.frame_count()));

  SweepMetrics out;
  const Sweep& anchor = source == MidplaneSource::GroundTruth ? gt : pred;
  out.midplane_index = select_midplane(anchor, 1);

  double sum = 0.0;
  for (std::size_t i = 0; i < pred.frame_count(); ++i) {
    const double d = dice(pred.frame(i), gt.frame(i));
    out.per_frame_dice.emplace_back(i, d);
    sum += d;
  }
  out.dice_mean = sum / static_cast<double>(pred.frame_count());
  out.dice_midplane = out.per_frame_dice[out.midplane_index].second;

  const FrameMask& pm = pred.frame(out.midplane_index);
  const FrameMask& gm = gt.frame(out.midplane_index);
  if (area_px(pm) > 0 && area_px(gm) > 0)
    out.hd_midplane_mm = hausdorff_mm(pm, gm);
  return out;
}

SweepMetrics interobserver(std::span<const Sweep> observers,
                           const Sweep& reference, MidplaneSource source) {
  if (observers.empty())
    throw InputError("inter-observer analysis needs at least one observer");

  SweepMetrics mean;
  std::size_t hd_count = 0;
  double hd_sum = 0.0;
  for (std::size_t i = 0; i < observers.size(); ++i) {
    const SweepMetrics m = sweep_metrics(observers[i], reference, source);
    if (i == 0) {
      mean.midplane_index = m.midplane_index;
      mean.per_frame_dice = m.per_frame_dice;
    } else {
      for (std::size_t j = 0; j < m.per_frame_dice.size(); ++j)
        mean.per_frame_dice[j].second += m.per_frame_dice[j].second;
    }
    mean.dice_mean += m.dice_mean;
    mean.dice_midplane += m.dice_midplane;
    if (m.hd_midplane_mm) {
      hd_sum += *m.hd_midplane_mm;
      ++hd_count;
    }
  }
  const double n = static_cast<double>(observers.size());
  mean.dice_mean /= n;
  mean.dice_midplane /= n;
  for (auto& [idx, d] : mean.per_frame_dice) d /= n;
  if (hd_count > 0) mean.hd_midplane_mm = hd_sum / hd_count;
  return mean;
}

}  // namespace pvol
