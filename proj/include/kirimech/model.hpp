#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kirimech/boundary.hpp"
#include "kirimech/core.hpp"

namespace kirimech {

inline constexpr std::string_view kLowerBoundBanner =
    "NOTE: F_tensile is a lower bound on the actuation force, not an exact prediction.";

/// Force components at one displacement. f_tensile is their plain sum.
struct ForceBreakdown {
  double displacement = 0.0;  // m
  double semi_major = 0.0;    // m
  double semi_minor = 0.0;    // m
  BoundaryRegime regime = BoundaryRegime::bend;
  bool theta_clamped = false;
  double f_boundary = 0.0;  // N
  double f_discrete = 0.0;  // N
  double f_mesh = 0.0;      // N
  double f_tensile = 0.0;   // N
};

ForceBreakdown tensile_force(const SheetSpec& sheet, double delta_x);

struct ForceCurve {
  std::string sheet_id;
  std::vector<ForceBreakdown> samples;
  double step = 0.0;  // m
};

/// Samples at 0, step, 2 step, ... up to max_displacement. Grid points are
/// snapped so that they survive a round trip through millimetres exactly.
ForceCurve force_curve(const SheetSpec& sheet, double max_displacement, double step);

struct ActuatorReport {
  double rating = 0.0;             // N
  double max_force = 0.0;          // N, largest F_tensile over [0, max_displacement]
  double max_force_at = 0.0;       // m
  double max_displacement = 0.0;   // m
  double margin = 0.0;             // rating - max_force
  bool pass = false;
};

/// Scans [0, max_displacement] at `resolution` and additionally just below the
/// bend/stretch switch, where the boundary force peaks.
ActuatorReport actuator_margin(const SheetSpec& sheet, double rating, double max_displacement,
                               double resolution = 1.0e-4);

/// One row of a measurement table, in the units of the file (mm, N).
struct Measurement {
  double delta_x_mm = 0.0;
  std::optional<double> force_n;
  std::optional<double> half_width_mm;
};

struct ValidationReport {
  double mae_force = 0.0;                     // N
  std::optional<double> mae_half_width;       // m; empty for force-only data
  std::size_t n_points = 0;                   // rows used for the force error
  std::size_t n_half_width = 0;               // rows used for the half-width error
  std::size_t n_skipped = 0;                  // rows with no usable measurement
};

/// Mean absolute errors of the model against measured data. Half-widths are
/// compared in millimetres, as measured. Throws InvalidArgument when no row
/// carries a force.
ValidationReport validate_against_measurements(const SheetSpec& sheet,
                                               const std::vector<Measurement>& measurements);

// CSV interfaces.

inline constexpr std::string_view kCurveCsvHeader =
    "delta_x_mm,a_mm,b_mm,regime,F_boundary_N,F_discrete_N,F_mesh_N,F_tensile_N";

/// Shortest decimal text that reads back as exactly `value`.
std::string format_exact(double value);

void write_curve_csv(std::ostream& out, const ForceCurve& curve);

/// Reads `delta_x_mm, force_N, half_width_mm` tables. Also accepts the curve
/// CSV, taking F_tensile_N as the force and b_mm as the half-width. Empty
/// cells are allowed. Throws FormatError with the offending row.
std::vector<Measurement> read_measurements_csv(std::istream& in);

}  // namespace kirimech
