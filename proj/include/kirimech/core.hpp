#pragma once

#include <map>
#include <string>
#include <vector>

namespace kirimech {

struct Material {
  std::string name;
  double youngs_modulus = 0.0;  // Pa

  bool operator==(const Material&) const = default;
};

/// Rectangular strip section. Bending is about the axis parallel to the width.
struct CrossSection {
  double width = 0.0;          // m
  double thickness = 0.0;      // m
  double second_moment = 0.0;  // m^4, w t^3 / 12
  double area = 0.0;           // m^2, w t

  bool operator==(const CrossSection&) const = default;
};

CrossSection make_cross_section(double width, double thickness);

/// Geometric and material description of one kirigami sheet.
///
/// Ribbons are indexed from the one adjacent to the boundary attachment
/// (i = 1) towards the central ribbon. `mesh_counts[i-1]` is the number of mesh
/// ribbons loading discrete ribbon i.
struct SheetSpec {
  std::string id;
  double radius = 0.0;  // m
  CrossSection boundary_section;
  CrossSection ribbon_section;
  int n_discrete = 0;
  std::vector<int> mesh_counts;
  double mesh_section_length = 0.0;     // m
  double attachment_half_width = 0.0;  // m
  Material material;

  /// Fields filled from engine defaults rather than measured sheet data.
  std::vector<std::string> assumed_fields;

  /// Throws InvalidArgument naming the first violated invariant.
  void validate() const;

  double bending_rigidity_boundary() const {
    return material.youngs_modulus * boundary_section.second_moment;
  }
  double bending_rigidity_ribbon() const {
    return material.youngs_modulus * ribbon_section.second_moment;
  }

  /// Copy with Young's modulus scaled by `k`.
  SheetSpec with_modulus_scaled(double k) const;
};

class MaterialRegistry {
 public:
  /// Registry holding the built-in TPU and PET entries.
  MaterialRegistry();

  /// Adds or replaces a material. Throws InvalidArgument for an empty name or
  /// a non-positive modulus.
  void add(const Material& material);

  /// Throws NotFound listing the available names.
  const Material& lookup(const std::string& name) const;

  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Material> materials_;
};

/// Built-in registry lookup.
Material lookup_material(const std::string& name);

// Defaults for sheet data that the published sheet table does not carry.
inline constexpr int kDefaultDiscreteRibbons = 9;
inline constexpr double kDefaultAttachmentHalfWidth = 5.0e-3;  // m

/// Mesh layout default: one central mesh to the boundary, two per gap after.
std::vector<int> default_mesh_counts(int n_discrete);

/// Central ribbon length divided by (largest mesh count + 1).
double default_mesh_section_length(double radius, const std::vector<int>& mesh_counts);

/// Sheets A-D. Throws NotFound for any other id.
SheetSpec sheet_preset(const std::string& id, const MaterialRegistry& registry = MaterialRegistry{});

std::vector<std::string> preset_ids();

/// Builds a sheet from table-style inputs and fills every omitted field from
/// the defaults above, recording which were assumed.
SheetSpec make_sheet(std::string id, double radius, double thickness, double ribbon_width,
                     const Material& material);

}  // namespace kirimech
