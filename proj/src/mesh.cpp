#include "kirimech/mesh.hpp"

#include "kirimech/errors.hpp"

namespace kirimech {

double first_section_deflection(double delta_x, std::span<const int> mesh_counts) {
  if (mesh_counts.empty()) throw InvalidArgument("mesh_counts must be non-empty");
  if (!(delta_x >= 0.0)) throw InvalidArgument("displacement must be non-negative");
  double compliance = 0.0;
  for (int n : mesh_counts) {
    if (n < 1) throw InvalidArgument("every mesh count must be at least 1");
    compliance += 1.0 / static_cast<double>(n);
  }
  return delta_x / compliance;
}

MeshLoadPath mesh_load_path(const SheetSpec& sheet, double delta_x) {
  if (!(sheet.mesh_section_length > 0.0)) {
    throw InvalidArgument("mesh_section_length must be positive");
  }
  MeshLoadPath path;
  path.first_deflection = first_section_deflection(delta_x, sheet.mesh_counts);
  path.per_ribbon_deflection.reserve(sheet.mesh_counts.size());
  for (int n : sheet.mesh_counts) {
    path.per_ribbon_deflection.push_back(path.first_deflection / static_cast<double>(n));
  }
  const double l = sheet.mesh_section_length;
  path.first_load = 48.0 * sheet.bending_rigidity_ribbon() * path.first_deflection / (l * l * l);
  return path;
}

double mesh_force(const SheetSpec& sheet, double delta_x) {
  return mesh_load_path(sheet, delta_x).first_load;
}

}  // namespace kirimech
