#include "kirimech/config.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "kirimech/errors.hpp"
#include "kirimech/units.hpp"

namespace kirimech {

namespace {

using nlohmann::json;

void drop_assumed(SheetSpec& sheet, std::string_view field) {
  auto& f = sheet.assumed_fields;
  f.erase(std::remove(f.begin(), f.end(), field), f.end());
}

void mark_assumed(SheetSpec& sheet, const std::string& field) {
  auto& f = sheet.assumed_fields;
  if (std::find(f.begin(), f.end(), field) == f.end()) f.push_back(field);
}

bool is_assumed(const SheetSpec& sheet, std::string_view field) {
  const auto& f = sheet.assumed_fields;
  return std::find(f.begin(), f.end(), field) != f.end();
}

double number(const json& entry, const char* key, const std::string& where) {
  const json& v = entry.at(key);
  if (!v.is_number()) throw InvalidArgument(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

SheetSpec build_sheet(const json& entry, const Config& config, std::size_t index) {
  const std::string where = "sheets[" + std::to_string(index) + "]";
  if (!entry.is_object()) throw InvalidArgument(where + " must be an object");
  if (!entry.contains("id") || !entry["id"].is_string()) {
    throw InvalidArgument(where + ": missing string 'id'");
  }
  const std::string id = entry["id"].get<std::string>();
  const std::string ctx = where + " ('" + id + "')";

  static const std::vector<std::string> known = {
      "id", "base", "material", "radius_mm", "thickness_mm", "ribbon_width_mm",
      "boundary_width_mm", "boundary_thickness_mm", "n_discrete", "mesh_counts",
      "mesh_section_length_mm", "attachment_half_width_mm"};
  for (const auto& [key, _] : entry.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InvalidArgument(ctx + ": unknown key '" + key + "'");
    }
  }

  SheetSpec sheet;
  if (entry.contains("base")) {
    sheet = resolve_sheet(entry["base"].get<std::string>(), config);
  } else {
    for (const char* key : {"radius_mm", "thickness_mm", "ribbon_width_mm", "material"}) {
      if (!entry.contains(key)) throw InvalidArgument(ctx + ": missing '" + key + "' (or 'base')");
    }
    sheet = make_sheet(id, units::from_mm(number(entry, "radius_mm", ctx)),
                       units::from_mm(number(entry, "thickness_mm", ctx)),
                       units::from_mm(number(entry, "ribbon_width_mm", ctx)),
                       config.materials.lookup(entry["material"].get<std::string>()));
  }
  sheet.id = id;

  if (entry.contains("material")) {
    sheet.material = config.materials.lookup(entry["material"].get<std::string>());
  }
  if (entry.contains("radius_mm")) sheet.radius = units::from_mm(number(entry, "radius_mm", ctx));

  const double thickness = entry.contains("thickness_mm")
                               ? units::from_mm(number(entry, "thickness_mm", ctx))
                               : sheet.ribbon_section.thickness;
  const double ribbon_width = entry.contains("ribbon_width_mm")
                                  ? units::from_mm(number(entry, "ribbon_width_mm", ctx))
                                  : sheet.ribbon_section.width;
  sheet.ribbon_section = make_cross_section(ribbon_width, thickness);
  const double boundary_width = entry.contains("boundary_width_mm")
                                    ? units::from_mm(number(entry, "boundary_width_mm", ctx))
                                    : (entry.contains("ribbon_width_mm") ? ribbon_width
                                                                         : sheet.boundary_section.width);
  const double boundary_thickness =
      entry.contains("boundary_thickness_mm")
          ? units::from_mm(number(entry, "boundary_thickness_mm", ctx))
          : (entry.contains("thickness_mm") ? thickness : sheet.boundary_section.thickness);
  sheet.boundary_section = make_cross_section(boundary_width, boundary_thickness);

  if (entry.contains("n_discrete")) {
    sheet.n_discrete = entry["n_discrete"].get<int>();
    drop_assumed(sheet, "n_discrete");
    if (!entry.contains("mesh_counts")) {
      sheet.mesh_counts = default_mesh_counts(std::max(sheet.n_discrete, 1));
      mark_assumed(sheet, "mesh_counts");
    }
  }
  if (entry.contains("mesh_counts")) {
    sheet.mesh_counts = entry["mesh_counts"].get<std::vector<int>>();
    drop_assumed(sheet, "mesh_counts");
  }
  if (entry.contains("mesh_section_length_mm")) {
    sheet.mesh_section_length = units::from_mm(number(entry, "mesh_section_length_mm", ctx));
    drop_assumed(sheet, "mesh_section_length");
  } else if (is_assumed(sheet, "mesh_section_length") && !sheet.mesh_counts.empty()) {
    sheet.mesh_section_length = default_mesh_section_length(sheet.radius, sheet.mesh_counts);
  }
  if (entry.contains("attachment_half_width_mm")) {
    sheet.attachment_half_width = units::from_mm(number(entry, "attachment_half_width_mm", ctx));
    drop_assumed(sheet, "attachment_half_width");
  }
  sheet.validate();
  return sheet;
}

}  // namespace

Config parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("config root must be an object");

  Config config;
  try {
    if (doc.contains("materials")) {
      std::size_t i = 0;
      for (const json& m : doc["materials"]) {
        const std::string where = "materials[" + std::to_string(i++) + "]";
        if (!m.contains("name") || !m.contains("youngs_modulus_mpa")) {
          throw InvalidArgument(where + ": needs 'name' and 'youngs_modulus_mpa'");
        }
        config.materials.add(
            {m["name"].get<std::string>(), units::from_mpa(number(m, "youngs_modulus_mpa", where))});
      }
    }
    if (doc.contains("sheets")) {
      std::size_t i = 0;
      for (const json& s : doc["sheets"]) {
        SheetSpec sheet = build_sheet(s, config, i++);
        if (config.sheets.count(sheet.id)) {
          throw InvalidArgument("duplicate sheet id '" + sheet.id + "'");
        }
        config.sheets.emplace(sheet.id, std::move(sheet));
      }
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config schema error: ") + e.what());
  }
  return config;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

SheetSpec resolve_sheet(const std::string& id, const Config& config) {
  auto it = config.sheets.find(id);
  if (it != config.sheets.end()) return it->second;
  try {
    return sheet_preset(id, config.materials);
  } catch (const NotFound&) {
    std::string known = "A, B, C, D";
    for (const auto& [key, _] : config.sheets) known += ", " + key;
    throw NotFound("unknown sheet '" + id + "' (available: " + known + ")");
  }
}

}  // namespace kirimech
