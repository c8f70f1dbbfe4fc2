#pragma once

#include <filesystem>
#include <string>

#include "kirimech/model.hpp"

namespace kirimech {

/// Force-displacement plot with the three components stacked. Output bytes
/// depend only on the curve.
std::string render_svg(const ForceCurve& curve);

/// Throws std::runtime_error naming the path when it cannot be written.
void emit_svg(const ForceCurve& curve, const std::filesystem::path& path);

}  // namespace kirimech
