#pragma once

#include <string_view>

#include "kirimech/core.hpp"

namespace kirimech {

/// Deformed elliptical boundary at one actuation displacement.
struct BoundaryState {
  double displacement = 0.0;  // m
  double semi_major = 0.0;    // m
  double semi_minor = 0.0;    // m
};

enum class BoundaryRegime { bend, stretch };

std::string_view to_string(BoundaryRegime regime);

struct BoundaryResponse {
  BoundaryState state;
  BoundaryRegime regime = BoundaryRegime::bend;
  double force = 0.0;  // N
};

/// Ramanujan's second approximation to the ellipse perimeter.
double ellipse_perimeter(double semi_major, double semi_minor);

double semi_major(double radius, double delta_x);

/// Semi-minor axis that keeps the Ramanujan perimeter equal to 2*pi*r when the
/// semi-major axis is r + delta_x/2. Returns 0 once the perimeter can no longer
/// be conserved (fully flattened ring).
double solve_semi_minor(double radius, double delta_x);

BoundaryState boundary_state(double radius, double delta_x);

/// Diametral pull force of a circular ring in linear ring theory:
/// 4 E I dx / (r^3 (pi - 8/pi)).
double bend_force(const SheetSpec& sheet, double delta_x);

/// r (pi - 2): separation increase at which the ring is two straight strands.
double flattening_displacement(double radius);

/// Hooke stretch of the two flattened strands, 2 E A dl / (pi r), with
/// dl = dx - r (pi - 2); zero up to the flattening displacement.
double stretch_force(const SheetSpec& sheet, double delta_x);

/// Piecewise boundary force. Bending governs while b > b_min; once the
/// semi-minor axis has closed onto the rigid attachment (b <= b_min) the
/// stretch branch governs.
BoundaryResponse boundary_response(const SheetSpec& sheet, double delta_x);

double boundary_force(const SheetSpec& sheet, double delta_x);

/// Displacement at which b reaches the attachment half-width, i.e. where the
/// regime switches from bend to stretch.
double regime_switch_displacement(const SheetSpec& sheet);

}  // namespace kirimech
