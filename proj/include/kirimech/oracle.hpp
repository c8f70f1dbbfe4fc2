#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kirimech/core.hpp"

namespace kirimech {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Closed inextensible elastic ring of `n_nodes` equal segments whose total
/// length is 2 pi r. Node 0 and node n/2 are the anchor pair pulled apart along x.
struct RingModel {
  int n_nodes = 0;
  double radius = 0.0;             // m
  double bending_stiffness = 0.0;  // EI, N m^2
  std::vector<Point2> node_positions;

  double segment_length() const;
  /// Anchor separation of the undeformed polygon.
  double rest_span() const;
};

/// Regular polygon at rest. Throws InvalidArgument unless n_nodes is even and
/// at least 64.
RingModel make_ring(double radius, double bending_stiffness, int n_nodes = 256);

/// Ring with the boundary ribbon's radius and bending stiffness.
RingModel ring_from_sheet(const SheetSpec& sheet, int n_nodes = 256);

struct RingSolverOptions {
  double stationarity_tol = 1.0e-10;   // N
  int max_iterations = 1000000;        // Newton iterations across all stages
  double max_stage = 0.0;              // m; continuation increment, 0 = r/16
};

struct RingSolution {
  RingModel ring;                       // deformed positions
  double displacement = 0.0;            // m
  double energy = 0.0;                  // J, relative to the undeformed ring
  double multiplier_force = 0.0;        // N, dU/d(dx) from the KKT multipliers
  double stationarity = 0.0;            // N, final projected gradient norm
  int iterations = 0;                   // Newton iterations of the final stage
  std::vector<double> energy_history;   // accepted energies of the final stage
};

/// Minimum bending-energy shape with the anchors held dx further apart than at
/// rest. Throws NumericalFailure carrying the stationarity residual when the
/// iteration budget runs out.
RingSolution solve_ring(const RingModel& ring, double delta_x, const RingSolverOptions& options = {});

/// Pull force dU/d(dx) by central difference with step dx/1000.
double simulate_ring_bend(const RingModel& ring, double delta_x, const RingSolverOptions& options = {});

struct LowerBoundPoint {
  double displacement = 0.0;  // m
  double model_force = 0.0;   // N, linear ring theory
  double oracle_force = 0.0;  // N
  double slack = 0.0;         // oracle - model
  std::optional<std::string> error;
};

struct LowerBoundReport {
  std::vector<LowerBoundPoint> points;
  double tolerance = 1.0e-6;  // N
  bool passed = false;
};

/// Compares the linear bend force with the ring oracle at each displacement.
/// Points are solved concurrently; a failing point is recorded and the rest
/// still run.
LowerBoundReport check_lower_bound(const SheetSpec& sheet, const std::vector<double>& displacements,
                                   int n_nodes = 256);

/// `x_mm,y_mm` rows, one per node.
void write_ring_csv(std::ostream& out, const RingModel& ring);

}  // namespace kirimech
