#include "kirimech/boundary.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kirimech/errors.hpp"

namespace kirimech {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxBisections = 200;

void require_displacement(double delta_x) {
  if (!(delta_x >= 0.0)) {
    std::ostringstream msg;
    msg << "displacement must be non-negative (got " << delta_x << " m)";
    throw InvalidArgument(msg.str());
  }
}

}  // namespace

std::string_view to_string(BoundaryRegime regime) {
  return regime == BoundaryRegime::bend ? "bend" : "stretch";
}

double ellipse_perimeter(double a, double b) {
  return kPi * (3.0 * (a + b) - std::sqrt((3.0 * a + b) * (a + 3.0 * b)));
}

double semi_major(double radius, double delta_x) {
  if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");
  require_displacement(delta_x);
  return radius + 0.5 * delta_x;
}

double solve_semi_minor(double radius, double delta_x) {
  const double a = semi_major(radius, delta_x);
  if (delta_x == 0.0) return radius;
  const double target = 2.0 * kPi * radius;
  auto residual = [a, target](double b) { return ellipse_perimeter(a, b) - target; };

  // The residual grows monotonically with b on [0, a].
  double lo = 0.0;
  double hi = a;
  const double r_lo = residual(lo);
  const double r_hi = residual(hi);
  if (r_lo >= 0.0) return 0.0;
  if (!(r_hi >= 0.0)) {
    throw NumericalFailure("semi-minor axis: perimeter root not bracketed on [0, a]", r_hi);
  }
  if (r_hi == 0.0) return hi;

  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (residual(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Pick whichever end is closer to conserving the perimeter.
  return std::abs(residual(lo)) <= std::abs(residual(hi)) ? lo : hi;
}

BoundaryState boundary_state(double radius, double delta_x) {
  return {delta_x, semi_major(radius, delta_x), solve_semi_minor(radius, delta_x)};
}

double bend_force(const SheetSpec& sheet, double delta_x) {
  require_displacement(delta_x);
  const double r = sheet.radius;
  return 4.0 * sheet.bending_rigidity_boundary() * delta_x / (r * r * r) / (kPi - 8.0 / kPi);
}

double flattening_displacement(double radius) { return radius * (kPi - 2.0); }

double stretch_force(const SheetSpec& sheet, double delta_x) {
  require_displacement(delta_x);
  const double elongation = delta_x - flattening_displacement(sheet.radius);
  if (elongation <= 0.0) return 0.0;
  return 2.0 * sheet.material.youngs_modulus * sheet.boundary_section.area * elongation /
         (kPi * sheet.radius);
}

BoundaryResponse boundary_response(const SheetSpec& sheet, double delta_x) {
  BoundaryResponse out;
  out.state = boundary_state(sheet.radius, delta_x);
  if (out.state.semi_minor > sheet.attachment_half_width) {
    out.regime = BoundaryRegime::bend;
    out.force = bend_force(sheet, delta_x);
  } else {
    out.regime = BoundaryRegime::stretch;
    out.force = stretch_force(sheet, delta_x);
  }
  return out;
}

double boundary_force(const SheetSpec& sheet, double delta_x) {
  return boundary_response(sheet, delta_x).force;
}

double regime_switch_displacement(const SheetSpec& sheet) {
  const double b_min = sheet.attachment_half_width;
  // b(dx) is non-increasing and reaches 0 at a finite dx; search up to 2r.
  double lo = 0.0;
  double hi = 2.0 * sheet.radius;
  if (solve_semi_minor(sheet.radius, hi) > b_min) {
    throw NumericalFailure("regime switch: b stays above b_min on [0, 2r]",
                           solve_semi_minor(sheet.radius, hi) - b_min);
  }
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (solve_semi_minor(sheet.radius, mid) > b_min) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace kirimech
