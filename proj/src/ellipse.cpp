#include "pvol/ellipse.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "pvol/errors.hpp"

namespace pvol {
namespace {

constexpr double kPi = std::numbers::pi;

// Relative axis-length gap below which the fit is treated as a circle and the
// orientation tie is broken towards zero.
constexpr double kCircleTie = 1e-9;

struct Conic {
  double a, b, c, d, e, f;
};

/// Center/axes/angle form of an elliptical conic (4ac - b^2 > 0 required).
EllipseParams conic_to_geometric(Conic k) {
  // Ensure the quadratic form is positive definite.
  if (k.a + k.c < 0.0) {
    k = {-k.a, -k.b, -k.c, -k.d, -k.e, -k.f};
  }
  const double den = 4.0 * k.a * k.c - k.b * k.b;
  if (!(den > 0.0)) throw FitError("conic is not an ellipse");

  const double cx = (k.b * k.e - 2.0 * k.c * k.d) / den;
  const double cy = (k.b * k.d - 2.0 * k.a * k.e) / den;
  const double mu = k.a * cx * cx + k.b * cx * cy + k.c * cy * cy +
                    k.d * cx + k.e * cy + k.f;

  const double half_tr = 0.5 * (k.a + k.c);
  const double disc = std::hypot(0.5 * (k.a - k.c), 0.5 * k.b);
  const double lambda_min = half_tr - disc;
  const double lambda_max = half_tr + disc;
  if (!(mu < 0.0) || !(lambda_min > 0.0))
    throw FitError("conic has no real elliptical solution");

  EllipseParams out;
  out.cx_mm = cx;
  out.cy_mm = cy;
  out.semi_major_mm = std::sqrt(-mu / lambda_min);
  out.semi_minor_mm = std::sqrt(-mu / lambda_max);

  if (out.semi_major_mm - out.semi_minor_mm <=
      kCircleTie * out.semi_major_mm) {
    out.orientation_rad = 0.0;
    return out;
  }
  // Double-angle form of the major-axis direction; both atan2 arguments
  // scale with the axis-length gap, so it stays well-conditioned down to
  // near-circular fits.
  double theta = 0.5 * std::atan2(-k.b, k.c - k.a);
  if (theta < 0.0) theta += kPi;
  if (theta >= kPi) theta = 0.0;
  out.orientation_rad = theta + 0.0;  // flushes -0
  return out;
}

}  // namespace

EllipseParams fit_ellipse(std::span<const std::array<double, 2>> points) {
  const std::size_t n = points.size();
  if (n < 5)
    throw InsufficientPointsError("ellipse fit needs at least 5 points, got " +
                                  std::to_string(n));

  double mx = 0.0, my = 0.0;
  for (const auto& p : points) {
    mx += p[0];
    my += p[1];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double var = 0.0;
  for (const auto& p : points) {
    const double dx = p[0] - mx;
    const double dy = p[1] - my;
    var += dx * dx + dy * dy;
  }
  const double scale = std::sqrt(var / (2.0 * static_cast<double>(n)));
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw FitError("degenerate point scatter (all points coincide)");

  // Scatter blocks of the design matrix split into quadratic and linear
  // parts (Halir & Flusser's numerically stable formulation).
  Eigen::Matrix3d s1 = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d s2 = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d s3 = Eigen::Matrix3d::Zero();
  for (const auto& p : points) {
    const double x = (p[0] - mx) / scale;
    const double y = (p[1] - my) / scale;
    const Eigen::Vector3d z1(x * x, x * y, y * y);
    const Eigen::Vector3d z2(x, y, 1.0);
    s1 += z1 * z1.transpose();
    s2 += z1 * z2.transpose();
    s3 += z2 * z2.transpose();
  }

  const Eigen::FullPivLU<Eigen::Matrix3d> lu(s3);
  if (!lu.isInvertible())
    throw FitError("rank-deficient design matrix (collinear points?)");
  const Eigen::Matrix3d t = -lu.solve(s2.transpose());
  const Eigen::Matrix3d m0 = s1 + s2 * t;
  Eigen::Matrix3d m;
  m.row(0) = m0.row(2) / 2.0;
  m.row(1) = -m0.row(1);
  m.row(2) = m0.row(0) / 2.0;

  const Eigen::EigenSolver<Eigen::Matrix3d> es(m);
  if (es.info() != Eigen::Success)
    throw FitError("eigen decomposition failed");

  // Exactly one eigenvector satisfies the ellipse constraint 4ac - b^2 > 0;
  // pick the best-conditioned one in case of numerical ties.
  Eigen::Vector3d best = Eigen::Vector3d::Zero();
  double best_cond = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector3d v = es.eigenvectors().col(i).real().normalized();
    const double cond = 4.0 * v(0) * v(2) - v(1) * v(1);
    if (cond > best_cond) {
      best_cond = cond;
      best = v;
    }
  }
  if (!(best_cond > 0.0))
    throw FitError("no elliptical solution for this point scatter");

  const Eigen::Vector3d rest = t * best;
  const Conic normalized{best(0), best(1), best(2),
                         rest(0), rest(1), rest(2)};
  EllipseParams fit = conic_to_geometric(normalized);

  fit.cx_mm = mx + scale * fit.cx_mm;
  fit.cy_mm = my + scale * fit.cy_mm;
  fit.semi_major_mm *= scale;
  fit.semi_minor_mm *= scale;
  return fit;
}

ImageAxisDiameters image_axis_diameters(const EllipseParams& e) {
  const double theta = e.orientation_rad;
  const bool major_horizontal = theta < kPi / 4.0 || theta >= 3.0 * kPi / 4.0;
  if (major_horizontal)
    return {2.0 * e.semi_major_mm, 2.0 * e.semi_minor_mm};
  return {2.0 * e.semi_minor_mm, 2.0 * e.semi_major_mm};
}

std::array<double, 6> conic_coefficients(const EllipseParams& e) {
  const double ct = std::cos(e.orientation_rad);
  const double st = std::sin(e.orientation_rad);
  const double ia = 1.0 / (e.semi_major_mm * e.semi_major_mm);
  const double ib = 1.0 / (e.semi_minor_mm * e.semi_minor_mm);

  const double a = ct * ct * ia + st * st * ib;
  const double b = 2.0 * ct * st * (ia - ib);
  const double c = st * st * ia + ct * ct * ib;
  const double d = -2.0 * a * e.cx_mm - b * e.cy_mm;
  const double f = -b * e.cx_mm - 2.0 * c * e.cy_mm;
  const double g = a * e.cx_mm * e.cx_mm + b * e.cx_mm * e.cy_mm +
                   c * e.cy_mm * e.cy_mm - 1.0;

  const double k = std::sqrt(4.0 * a * c - b * b);
  return {a / k, b / k, c / k, d / k, f / k, g / k};
}

}  // namespace pvol
