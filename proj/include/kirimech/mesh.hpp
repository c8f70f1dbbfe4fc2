#pragma once

#include <span>
#include <vector>

#include "kirimech/core.hpp"

namespace kirimech {

/// How the actuation displacement is shared between the mesh-loaded sections.
struct MeshLoadPath {
  double first_deflection = 0.0;             // m, deflection of the first section
  std::vector<double> per_ribbon_deflection;  // m, first_deflection / n_m,i
  double first_load = 0.0;                    // N, centre load on the first section
};

/// dx / sum(1 / n_m,i). Throws InvalidArgument for an empty or non-positive
/// count list or a negative displacement.
double first_section_deflection(double delta_x, std::span<const int> mesh_counts);

MeshLoadPath mesh_load_path(const SheetSpec& sheet, double delta_x);

/// Centre-loaded simply supported section: 48 E I d / l_m^3 for the first
/// section, which carries the whole mesh load.
double mesh_force(const SheetSpec& sheet, double delta_x);

}  // namespace kirimech
