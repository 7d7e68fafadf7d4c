#include "support.hpp"

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pvol/errors.hpp"

namespace pvol::test {

namespace {
std::filesystem::path unique_dir() {
  static std::atomic<unsigned> counter{0};
  const auto base = std::filesystem::temp_directory_path();
  return base / ("pvol_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter.fetch_add(1)));
}
}  // namespace

TempDir::TempDir() : path_(unique_dir()) {
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

FrameMask random_mask(std::mt19937_64& rng, int width, int height,
                      PixelSpacing spacing, double density) {
  FrameMask mask(width, height, spacing);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      if (u(rng) < density) mask.set(r, c, true);
  return mask;
}

FrameMask random_nonempty_mask(std::mt19937_64& rng, int width, int height,
                               PixelSpacing spacing, double density) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    FrameMask mask = random_mask(rng, width, height, spacing, density);
    for (const auto p : mask.pixels())
      if (p) return mask;
  }
  FrameMask mask(width, height, spacing);
  mask.set(height / 2, width / 2, true);
  return mask;
}

FrameMask disk_mask(int width, int height, PixelSpacing spacing, double cx_mm,
                    double cy_mm, double radius_mm) {
  FrameMask mask(width, height, spacing);
  const double r2 = radius_mm * radius_mm;
  for (int r = 0; r < height; ++r) {
    const double dy = r * spacing.dy_mm - cy_mm;
    for (int c = 0; c < width; ++c) {
      const double dx = c * spacing.dx_mm - cx_mm;
      if (dx * dx + dy * dy <= r2) mask.set(r, c, true);
    }
  }
  return mask;
}

FrameMask dilate8(const FrameMask& mask) {
  FrameMask out(mask.width(), mask.height(), mask.spacing());
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (!mask.at(r, c)) continue;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const int nr = r + dr;
          const int nc = c + dc;
          if (nr >= 0 && nr < mask.height() && nc >= 0 && nc < mask.width())
            out.set(nr, nc, true);
        }
      }
    }
  }
  return out;
}

FrameMask translate(const FrameMask& mask, int dr, int dc) {
  FrameMask out(mask.width(), mask.height(), mask.spacing());
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (!mask.at(r, c)) continue;
      const int nr = r + dr;
      const int nc = c + dc;
      if (nr < 0 || nr >= mask.height() || nc < 0 || nc >= mask.width())
        throw pvol::ValidationError("translation out of bounds in test");
      out.set(nr, nc, true);
    }
  }
  return out;
}

std::vector<std::array<double, 2>> sample_ellipse(const EllipseParams& e,
                                                  int count, double phase) {
  std::vector<std::array<double, 2>> points;
  points.reserve(static_cast<std::size_t>(count));
  const double ct = std::cos(e.orientation_rad);
  const double st = std::sin(e.orientation_rad);
  for (int i = 0; i < count; ++i) {
    const double phi = phase + 2.0 * std::numbers::pi * i / count;
    const double px = e.semi_major_mm * std::cos(phi);
    const double py = e.semi_minor_mm * std::sin(phi);
    points.push_back(
        {e.cx_mm + px * ct - py * st, e.cy_mm + px * st + py * ct});
  }
  return points;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pvol::test
