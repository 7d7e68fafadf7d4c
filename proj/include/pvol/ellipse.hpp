#pragma once

#include <array>
#include <span>

namespace pvol {

/// Fitted ellipse in physical coordinates. The orientation is the angle of
/// the major axis against the +x image axis, normalized to [0, pi).
struct EllipseParams {
  double cx_mm = 0.0;
  double cy_mm = 0.0;
  double semi_major_mm = 0.0;
  double semi_minor_mm = 0.0;
  double orientation_rad = 0.0;
};

/// Ellipse-specific direct least-squares conic fit (constrained generalized
/// eigenproblem). Points are mean-centered and isotropically scaled before
/// solving; the result is reported in the input coordinate frame. Needs at
/// least 5 points in non-degenerate position; always returns an ellipse or
/// throws.
EllipseParams fit_ellipse(std::span<const std::array<double, 2>> points);

struct ImageAxisDiameters {
  double horizontal_mm = 0.0;
  double vertical_mm = 0.0;
};

/// Classify the major axis as horizontal when the orientation lies in
/// [0, pi/4) or [3pi/4, pi), vertical otherwise, and report both full
/// diameters along the image axes.
ImageAxisDiameters image_axis_diameters(const EllipseParams& e);

/// Conic coefficients (a, b, c, d, e, f) of a x^2 + b xy + c y^2 + d x +
/// e y + f = 0 scaled so that 4ac - b^2 = 1.
std::array<double, 6> conic_coefficients(const EllipseParams& e);

}  // namespace pvol
