#include "kirimech/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kirimech/errors.hpp"
#include "kirimech/units.hpp"

namespace kirimech {

CrossSection make_cross_section(double width, double thickness) {
  if (!(width > 0.0) || !(thickness > 0.0)) {
    std::ostringstream msg;
    msg << "cross-section dimensions must be positive (width=" << width
        << " m, thickness=" << thickness << " m)";
    throw InvalidArgument(msg.str());
  }
  CrossSection s;
  s.width = width;
  s.thickness = thickness;
  s.second_moment = width * thickness * thickness * thickness / 12.0;
  s.area = width * thickness;
  return s;
}

void SheetSpec::validate() const {
  auto fail = [this](const std::string& what) {
    throw InvalidArgument("sheet '" + id + "': " + what);
  };
  if (!(radius > 0.0)) fail("radius must be positive");
  if (!(boundary_section.width > 0.0 && boundary_section.thickness > 0.0))
    fail("boundary section must have positive dimensions");
  if (!(ribbon_section.width > 0.0 && ribbon_section.thickness > 0.0))
    fail("ribbon section must have positive dimensions");
  if (n_discrete < 1 || n_discrete % 2 == 0)
    fail("n_discrete must be odd and at least 1");
  if (mesh_counts.size() != static_cast<std::size_t>(n_discrete))
    fail("mesh_counts must have exactly n_discrete entries");
  if (std::any_of(mesh_counts.begin(), mesh_counts.end(), [](int n) { return n < 1; }))
    fail("every mesh count must be at least 1");
  if (!(mesh_section_length > 0.0)) fail("mesh_section_length must be positive");
  if (!(attachment_half_width > 0.0 && attachment_half_width < radius))
    fail("attachment_half_width must lie in (0, radius)");
  if (material.name.empty()) fail("material has no name");
  if (!(material.youngs_modulus > 0.0)) fail("Young's modulus must be positive");
}

SheetSpec SheetSpec::with_modulus_scaled(double k) const {
  SheetSpec s = *this;
  s.material.youngs_modulus *= k;
  return s;
}

MaterialRegistry::MaterialRegistry() {
  add({"TPU", units::from_mpa(14.77)});
  add({"PET", units::from_mpa(3570.0)});
}

void MaterialRegistry::add(const Material& material) {
  if (material.name.empty()) throw InvalidArgument("material name must be non-empty");
  if (!(material.youngs_modulus > 0.0))
    throw InvalidArgument("material '" + material.name + "': Young's modulus must be positive");
  materials_[material.name] = material;
}

const Material& MaterialRegistry::lookup(const std::string& name) const {
  auto it = materials_.find(name);
  if (it == materials_.end()) {
    std::string available;
    for (const auto& [key, _] : materials_) {
      if (!available.empty()) available += ", ";
      available += key;
    }
    throw NotFound("unknown material '" + name + "' (available: " + available + ")");
  }
  return it->second;
}

bool MaterialRegistry::contains(const std::string& name) const {
  return materials_.count(name) != 0;
}

std::vector<std::string> MaterialRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [key, _] : materials_) out.push_back(key);
  return out;
}

Material lookup_material(const std::string& name) {
  static const MaterialRegistry builtins;
  return builtins.lookup(name);
}

std::vector<int> default_mesh_counts(int n_discrete) {
  if (n_discrete < 1) throw InvalidArgument("n_discrete must be at least 1");
  std::vector<int> counts(static_cast<std::size_t>(n_discrete), 2);
  counts.front() = 1;
  return counts;
}

double default_mesh_section_length(double radius, const std::vector<int>& mesh_counts) {
  if (mesh_counts.empty()) throw InvalidArgument("mesh_counts must be non-empty");
  const int widest = *std::max_element(mesh_counts.begin(), mesh_counts.end());
  return 2.0 * radius / static_cast<double>(widest + 1);
}

SheetSpec make_sheet(std::string id, double radius, double thickness, double ribbon_width,
                     const Material& material) {
  SheetSpec s;
  s.id = std::move(id);
  s.radius = radius;
  s.boundary_section = make_cross_section(ribbon_width, thickness);
  s.ribbon_section = s.boundary_section;
  s.material = material;
  s.n_discrete = kDefaultDiscreteRibbons;
  s.mesh_counts = default_mesh_counts(s.n_discrete);
  s.mesh_section_length = default_mesh_section_length(radius, s.mesh_counts);
  s.attachment_half_width = kDefaultAttachmentHalfWidth;
  s.assumed_fields = {"n_discrete", "mesh_counts", "mesh_section_length",
                      "attachment_half_width"};
  s.validate();
  return s;
}

std::vector<std::string> preset_ids() { return {"A", "B", "C", "D"}; }

SheetSpec sheet_preset(const std::string& id, const MaterialRegistry& registry) {
  using units::from_mm;
  // Radius, thickness and ribbon width in mm.
  if (id == "A") return make_sheet("A", from_mm(22.24), from_mm(1.0), from_mm(1.0), registry.lookup("TPU"));
  if (id == "B") return make_sheet("B", from_mm(22.24), from_mm(1.5), from_mm(1.0), registry.lookup("TPU"));
  if (id == "C") return make_sheet("C", from_mm(16.68), from_mm(1.0), from_mm(0.75), registry.lookup("TPU"));
  if (id == "D") return make_sheet("D", from_mm(22.14), from_mm(0.25), from_mm(0.8), registry.lookup("PET"));
  throw NotFound("unknown sheet preset '" + id + "' (available: A, B, C, D)");
}

}  // namespace kirimech
