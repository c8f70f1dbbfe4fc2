#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "kirimech/core.hpp"

namespace kirimech {

/// Materials and sheets defined by a JSON config file (schema: docs/config.md).
/// Lengths are in mm and moduli in MPa inside the file.
struct Config {
  MaterialRegistry materials;
  std::map<std::string, SheetSpec> sheets;
};

/// Throws InvalidArgument on schema violations, naming the offending entry.
Config parse_config(std::string_view json_text);

/// Throws std::runtime_error (with the path) when the file cannot be read.
Config load_config(const std::filesystem::path& path);

/// Config sheets shadow the built-in presets of the same id.
SheetSpec resolve_sheet(const std::string& id, const Config& config);

}  // namespace kirimech
