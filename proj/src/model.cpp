#include "kirimech/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "kirimech/discrete.hpp"
#include "kirimech/errors.hpp"
#include "kirimech/mesh.hpp"
#include "kirimech/units.hpp"

namespace kirimech {

namespace {

template <typename Fn>
auto named_component(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const NumericalFailure& e) {
    throw NumericalFailure(std::string(name) + ": " + e.what(), e.residual());
  }
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<double> parse_cell(const std::string& cell, std::size_t row, const char* column) {
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    throw FormatError("row " + std::to_string(row) + ": column '" + column +
                          "' is not a number ('" + cell + "')",
                      row);
  }
  return value;
}

}  // namespace

ForceBreakdown tensile_force(const SheetSpec& sheet, double delta_x) {
  if (!(delta_x >= 0.0)) throw InvalidArgument("displacement must be non-negative");
  ForceBreakdown out;
  out.displacement = delta_x;

  const BoundaryResponse boundary =
      named_component("boundary", [&] { return boundary_response(sheet, delta_x); });
  out.semi_major = boundary.state.semi_major;
  out.semi_minor = boundary.state.semi_minor;
  out.regime = boundary.regime;
  out.f_boundary = boundary.force;

  const DiscreteResponse discrete =
      named_component("discrete", [&] { return discrete_response(sheet, delta_x); });
  out.f_discrete = discrete.force;
  out.theta_clamped = discrete.linkage.clamped;

  out.f_mesh = named_component("mesh", [&] { return mesh_force(sheet, delta_x); });
  out.f_tensile = out.f_boundary + out.f_discrete + out.f_mesh;
  return out;
}

ForceCurve force_curve(const SheetSpec& sheet, double max_displacement, double step) {
  if (!(step > 0.0)) throw InvalidArgument("curve step must be positive");
  if (!(max_displacement >= step)) {
    throw InvalidArgument("max displacement must be at least one step");
  }
  ForceCurve curve;
  curve.sheet_id = sheet.id;
  curve.step = step;
  // Tolerate accumulated rounding so that e.g. 25 mm / 5 mm gives 6 samples.
  const auto count = static_cast<std::size_t>(std::floor(max_displacement / step * (1.0 + 1e-12)));
  curve.samples.reserve(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    const double dx = units::snap_to_mm_grid(static_cast<double>(i) * step);
    try {
      curve.samples.push_back(tensile_force(sheet, dx));
    } catch (const NumericalFailure& e) {
      std::ostringstream msg;
      msg << "at delta_x = " << units::to_mm(dx) << " mm: " << e.what();
      throw NumericalFailure(msg.str(), e.residual());
    }
  }
  return curve;
}

ActuatorReport actuator_margin(const SheetSpec& sheet, double rating, double max_displacement,
                               double resolution) {
  if (!(rating > 0.0)) throw InvalidArgument("actuator rating must be positive");
  if (!(max_displacement > 0.0)) throw InvalidArgument("max displacement must be positive");
  if (!(resolution > 0.0)) throw InvalidArgument("resolution must be positive");

  std::vector<double> candidates;
  const auto n = static_cast<std::size_t>(std::ceil(max_displacement / resolution));
  for (std::size_t i = 0; i < n; ++i) candidates.push_back(static_cast<double>(i) * resolution);
  candidates.push_back(max_displacement);
  const double switch_dx = regime_switch_displacement(sheet);
  if (switch_dx <= max_displacement) {
    candidates.push_back(std::nextafter(switch_dx, 0.0));
  }

  ActuatorReport report;
  report.rating = rating;
  report.max_displacement = max_displacement;
  for (double dx : candidates) {
    const double f = tensile_force(sheet, dx).f_tensile;
    if (f > report.max_force) {
      report.max_force = f;
      report.max_force_at = dx;
    }
  }
  report.margin = rating - report.max_force;
  report.pass = report.margin >= 0.0;
  return report;
}

ValidationReport validate_against_measurements(const SheetSpec& sheet,
                                               const std::vector<Measurement>& measurements) {
  if (measurements.empty()) throw InvalidArgument("measurement table is empty");
  ValidationReport report;
  double force_err = 0.0;
  double width_err_mm = 0.0;
  for (const Measurement& m : measurements) {
    if (!(m.delta_x_mm >= 0.0)) throw InvalidArgument("measured displacement must be non-negative");
    if (!m.force_n && !m.half_width_mm) {
      ++report.n_skipped;
      continue;
    }
    const ForceBreakdown predicted = tensile_force(sheet, units::from_mm(m.delta_x_mm));
    if (m.force_n) {
      force_err += std::abs(predicted.f_tensile - *m.force_n);
      ++report.n_points;
    }
    if (m.half_width_mm) {
      width_err_mm += std::abs(units::to_mm(predicted.semi_minor) - *m.half_width_mm);
      ++report.n_half_width;
    }
  }
  if (report.n_points == 0) throw InvalidArgument("no measurement row carries a force");
  report.mae_force = force_err / static_cast<double>(report.n_points);
  if (report.n_half_width > 0) {
    report.mae_half_width =
        units::from_mm(width_err_mm / static_cast<double>(report.n_half_width));
  }
  return report;
}

std::string format_exact(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_curve_csv(std::ostream& out, const ForceCurve& curve) {
  out << kCurveCsvHeader << '\n';
  for (const ForceBreakdown& s : curve.samples) {
    out << format_exact(units::to_mm(s.displacement)) << ','
        << format_exact(units::to_mm(s.semi_major)) << ','
        << format_exact(units::to_mm(s.semi_minor)) << ',' << to_string(s.regime) << ','
        << format_exact(s.f_boundary) << ',' << format_exact(s.f_discrete) << ','
        << format_exact(s.f_mesh) << ',' << format_exact(s.f_tensile) << '\n';
  }
}

std::vector<Measurement> read_measurements_csv(std::istream& in) {
  std::string line;
  std::size_t row = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++row;
    if (!trim(line).empty()) {
      header = split_csv_line(line);
      break;
    }
  }
  if (header.empty()) throw FormatError("measurement table has no header", row);

  auto find_column = [&header](std::initializer_list<std::string_view> names) -> int {
    for (std::string_view name : names) {
      auto it = std::find(header.begin(), header.end(), name);
      if (it != header.end()) return static_cast<int>(it - header.begin());
    }
    return -1;
  };
  const int dx_col = find_column({"delta_x_mm"});
  const int force_col = find_column({"force_N", "F_tensile_N"});
  const int width_col = find_column({"half_width_mm", "b_mm"});
  if (dx_col < 0) throw FormatError("header lacks a 'delta_x_mm' column", row);
  if (force_col < 0 && width_col < 0) {
    throw FormatError("header lacks both 'force_N' and 'half_width_mm' columns", row);
  }

  std::vector<Measurement> rows;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    auto cell = [&cells](int col) -> std::string {
      return col >= 0 && static_cast<std::size_t>(col) < cells.size() ? cells[static_cast<std::size_t>(col)]
                                                                      : std::string{};
    };
    const auto dx = parse_cell(cell(dx_col), row, "delta_x_mm");
    if (!dx) throw FormatError("row " + std::to_string(row) + ": missing delta_x_mm", row);
    if (*dx < 0.0) {
      throw FormatError("row " + std::to_string(row) + ": negative delta_x_mm", row);
    }
    Measurement m;
    m.delta_x_mm = *dx;
    m.force_n = parse_cell(cell(force_col), row, "force_N");
    m.half_width_mm = parse_cell(cell(width_col), row, "half_width_mm");
    rows.push_back(m);
  }
  if (rows.empty()) throw FormatError("measurement table has no data rows", row);
  return rows;
}

}  // namespace kirimech
