#include "pvol/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "pvol/errors.hpp"
#include "pvol/kernels.hpp"
#include "pvol/raster.hpp"
#include "pvol/volumetry.hpp"

namespace pvol {
namespace {

constexpr int kHarmonics = 3;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa draw in [0, 1); reproducible across standard libraries
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double normal(std::mt19937_64& rng) {
  // Box-Muller; hand-rolled because std::normal_distribution's sequence is
  // implementation-defined.
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

void rasterize_ellipse(FrameMask& frame, double cx, double cy, double rx,
                       double ry) {
  const double inv_rx = 1.0 / rx;
  const double inv_ry = 1.0 / ry;
  for (int r = 0; r < frame.height(); ++r) {
    const double ny = (static_cast<double>(r) * frame.spacing().dy_mm - cy) *
                      inv_ry;
    kernels::ellipse_inside_row(static_cast<std::size_t>(frame.width()),
                                frame.spacing().dx_mm, cx, inv_rx, ny * ny,
                                frame.row(r));
  }
}

}  // namespace

void PhantomSpec::validate() const {
  if (!(frontal_mm > 0.0 && longitudinal_mm > 0.0 && sagittal_mm > 0.0))
    throw ValidationError("phantom diameters must be positive");
  spacing.validate();
  if (!(slice_step_mm > 0.0))
    throw ValidationError("slice step must be positive");
  if (frame_width < 1 || frame_height < 1)
    throw ValidationError("frame dimensions must be positive");
  if (!(jitter_sigma_mm >= 0.0))
    throw ValidationError("jitter sigma must be non-negative");
  if (!(extremity_dropout >= 0.0 && extremity_dropout <= 1.0))
    throw ValidationError("extremity dropout must lie in [0, 1]");
}

Sweep generate_sweep(const PhantomSpec& spec, PlaneKind plane,
                     const std::string& patient_id) {
  spec.validate();

  // In-plane semi-axes at the equator and the half-extent along the sweep.
  double rx, ry, half_span;
  if (plane == PlaneKind::Axial) {
    rx = spec.frontal_mm / 2.0;
    ry = spec.longitudinal_mm / 2.0;
    half_span = spec.sagittal_mm / 2.0;
  } else {
    rx = spec.sagittal_mm / 2.0;
    ry = spec.longitudinal_mm / 2.0;
    half_span = spec.frontal_mm / 2.0;
  }

  const double extent_x = (spec.frame_width - 1) * spec.spacing.dx_mm;
  const double extent_y = (spec.frame_height - 1) * spec.spacing.dy_mm;
  const double cx = extent_x / 2.0 + spec.center_offset_x_mm;
  const double cy = extent_y / 2.0 + spec.center_offset_y_mm;
  if (cx - rx < 0.0 || cx + rx > extent_x)
    throw GeometryError("phantom cross-section exceeds frame width: needs " +
                        std::to_string(2.0 * rx) + " mm of " +
                        std::to_string(extent_x) + " mm");
  if (cy - ry < 0.0 || cy + ry > extent_y)
    throw GeometryError("phantom cross-section exceeds frame height: needs " +
                        std::to_string(2.0 * ry) + " mm of " +
                        std::to_string(extent_y) + " mm");

  // Slice grid symmetric about the equator so the true mid-plane is hit
  // exactly; one guaranteed-empty frame beyond each pole.
  const int m =
      static_cast<int>(std::ceil(half_span / spec.slice_step_mm)) + 1;
  std::vector<FrameMask> frames;
  frames.reserve(static_cast<std::size_t>(2 * m + 1));
  for (int i = 0; i <= 2 * m; ++i) {
    FrameMask frame(spec.frame_width, spec.frame_height, spec.spacing);
    const double z = (i - m) * spec.slice_step_mm;
    const double k2 = 1.0 - (z / half_span) * (z / half_span);
    if (k2 > 0.0) {
      const double k = std::sqrt(k2);
      rasterize_ellipse(frame, cx, cy, rx * k, ry * k);
    }
    frames.push_back(std::move(frame));
  }
  return Sweep(patient_id, plane, std::move(frames), "phantom");
}

double analytic_volume_ml(const PhantomSpec& spec) {
  spec.validate();
  return ellipsoid_volume_ml(
      {spec.frontal_mm, spec.longitudinal_mm, spec.sagittal_mm});
}

Sweep perturb_sweep(const Sweep& sweep, double jitter_sigma_mm,
                    double extremity_dropout, std::uint64_t seed) {
  if (!(jitter_sigma_mm >= 0.0))
    throw ValidationError("jitter sigma must be non-negative");
  if (!(extremity_dropout >= 0.0 && extremity_dropout <= 1.0))
    throw ValidationError("extremity dropout must lie in [0, 1]");
  if (jitter_sigma_mm == 0.0 && extremity_dropout == 0.0) return sweep;

  // Foreground extent of the sweep; the outer 10% per end may drop out.
  std::ptrdiff_t first = -1, last = -1;
  for (std::size_t i = 0; i < sweep.frame_count(); ++i) {
    if (area_px(sweep.frame(i)) > 0) {
      if (first < 0) first = static_cast<std::ptrdiff_t>(i);
      last = static_cast<std::ptrdiff_t>(i);
    }
  }
  if (first < 0) return sweep;

  const double dx = sweep.spacing().dx_mm;
  const double dy = sweep.spacing().dy_mm;
  const double coeff_sigma =
      jitter_sigma_mm / std::sqrt(static_cast<double>(kHarmonics));

  std::vector<FrameMask> frames;
  frames.reserve(sweep.frame_count());
  for (std::size_t i = 0; i < sweep.frame_count(); ++i) {
    const FrameMask& in = sweep.frame(i);
    if (area_px(in) == 0) {
      frames.push_back(in);
      continue;
    }
    std::mt19937_64 rng(mix_seed(seed, i));
    double ak[kHarmonics], bk[kHarmonics];
    for (int k = 0; k < kHarmonics; ++k) {
      ak[k] = coeff_sigma * normal(rng);
      bk[k] = coeff_sigma * normal(rng);
    }
    const double u = uniform01(rng);

    if (extremity_dropout > 0.0) {
      const double t =
          last > first
              ? static_cast<double>(static_cast<std::ptrdiff_t>(i) - first) /
                    static_cast<double>(last - first)
              : 0.0;
      if ((t < 0.1 || t > 0.9) && u < extremity_dropout) {
        frames.emplace_back(in.width(), in.height(), in.spacing());
        continue;
      }
    }
    if (jitter_sigma_mm == 0.0) {
      frames.push_back(in);
      continue;
    }

    // Centroid of the foreground, in mm.
    double gx = 0.0, gy = 0.0;
    std::size_t count = 0;
    for (int r = 0; r < in.height(); ++r) {
      const std::uint8_t* row = in.row(r);
      for (int c = 0; c < in.width(); ++c) {
        if (row[c]) {
          gx += c * dx;
          gy += r * dy;
          ++count;
        }
      }
    }
    gx /= static_cast<double>(count);
    gy /= static_cast<double>(count);

    // Radial warp: a pixel at (rho, phi) takes the source value at
    // rho - delta(phi), displacing the boundary outward by delta.
    FrameMask out(in.width(), in.height(), in.spacing());
    for (int r = 0; r < in.height(); ++r) {
      const double y = r * dy;
      std::uint8_t* orow = out.row(r);
      for (int c = 0; c < in.width(); ++c) {
        const double x = c * dx;
        const double vx = x - gx;
        const double vy = y - gy;
        const double rho = std::hypot(vx, vy);
        if (rho == 0.0) {
          orow[c] = in.at(r, c) ? 1 : 0;
          continue;
        }
        const double phi = std::atan2(vy, vx);
        double delta = 0.0;
        for (int k = 0; k < kHarmonics; ++k)
          delta += ak[k] * std::cos((k + 1) * phi) +
                   bk[k] * std::sin((k + 1) * phi);
        const double rho_src = rho - delta;
        if (rho_src <= 0.0) {
          const int cc = static_cast<int>(std::lround(gx / dx));
          const int cr = static_cast<int>(std::lround(gy / dy));
          orow[c] = in.at(std::clamp(cr, 0, in.height() - 1),
                          std::clamp(cc, 0, in.width() - 1))
                        ? 1
                        : 0;
          continue;
        }
        const double scale = rho_src / rho;
        const int sc =
            static_cast<int>(std::lround((gx + vx * scale) / dx));
        const int sr =
            static_cast<int>(std::lround((gy + vy * scale) / dy));
        if (sc < 0 || sc >= in.width() || sr < 0 || sr >= in.height()) {
          orow[c] = 0;
          continue;
        }
        orow[c] = in.at(sr, sc) ? 1 : 0;
      }
    }
    frames.push_back(std::move(out));
  }
  return Sweep(sweep.patient_id(), sweep.plane(), std::move(frames),
               sweep.source());
}

}  // namespace pvol
