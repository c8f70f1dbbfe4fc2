#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kirimech/core.hpp"

namespace kirimech::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2 };

/// Runs one `kirimech` invocation. Regular output goes to `out`, diagnostics
/// and the lower-bound banner to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Lines describing every engine default and model convention that affects
/// results for `sheet` at the given displacements (m).
std::vector<std::string> explain(const SheetSpec& sheet, const std::vector<double>& displacements);

}  // namespace kirimech::cli
