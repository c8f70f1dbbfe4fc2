#include "kirimech/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>

#include "kirimech/boundary.hpp"
#include "kirimech/config.hpp"
#include "kirimech/discrete.hpp"
#include "kirimech/errors.hpp"
#include "kirimech/mesh.hpp"
#include "kirimech/model.hpp"
#include "kirimech/oracle.hpp"
#include "kirimech/svg.hpp"
#include "kirimech/units.hpp"

namespace kirimech::cli {

namespace {

using units::from_mm;
using units::to_mm;

constexpr const char* kOutputDirEnv = "KIRIMECH_OUTPUT_DIR";

// Human-readable numbers: 6 significant digits.
std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct SheetOptions {
  std::string sheet_id = "A";
  std::string config_path;
  bool explain = false;
};

void add_sheet_options(CLI::App* cmd, SheetOptions& opts) {
  cmd->add_option("--sheet", opts.sheet_id, "Preset (A-D) or sheet id from --config")
      ->capture_default_str();
  cmd->add_option("--config", opts.config_path, "JSON file with extra materials and sheets");
  cmd->add_flag("--explain", opts.explain, "List engine defaults and model conventions in effect");
}

SheetSpec load_sheet(const SheetOptions& opts) {
  Config config;
  if (!opts.config_path.empty()) config = load_config(opts.config_path);
  return resolve_sheet(opts.sheet_id, config);
}

std::filesystem::path output_path(const std::string& arg) {
  std::filesystem::path p(arg);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  return f;
}

std::vector<double> parse_mm_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("not a number in displacement list: '" + item + "'");
    }
    if (used != item.size()) throw InvalidArgument("not a number in displacement list: '" + item + "'");
    out.push_back(from_mm(v));
  }
  if (out.empty()) throw InvalidArgument("empty displacement list");
  return out;
}

void print_explain(std::ostream& out, const SheetSpec& sheet, const std::vector<double>& dxs) {
  out << "# explain (sheet " << sheet.id << ")\n";
  for (const std::string& line : explain(sheet, dxs)) out << "# " << line << '\n';
}

// Sweep parameters: name -> setter taking the value in CLI units.
SheetSpec with_parameter(SheetSpec sheet, const std::string& param, double value) {
  if (param == "thickness") {
    sheet.ribbon_section = make_cross_section(sheet.ribbon_section.width, from_mm(value));
    sheet.boundary_section = make_cross_section(sheet.boundary_section.width, from_mm(value));
  } else if (param == "ribbon_width") {
    sheet.ribbon_section = make_cross_section(from_mm(value), sheet.ribbon_section.thickness);
    sheet.boundary_section = make_cross_section(from_mm(value), sheet.boundary_section.thickness);
  } else if (param == "radius") {
    sheet.radius = from_mm(value);
    const auto& f = sheet.assumed_fields;
    if (std::find(f.begin(), f.end(), "mesh_section_length") != f.end()) {
      sheet.mesh_section_length = default_mesh_section_length(sheet.radius, sheet.mesh_counts);
    }
  } else if (param == "youngs_modulus") {
    sheet.material.youngs_modulus = units::from_mpa(value);
  } else if (param == "attachment_half_width") {
    sheet.attachment_half_width = from_mm(value);
  } else if (param == "mesh_section_length") {
    sheet.mesh_section_length = from_mm(value);
  } else {
    throw InvalidArgument("unknown sweep parameter '" + param + "'");
  }
  sheet.validate();
  return sheet;
}

int cmd_geometry(const SheetOptions& opts, double dx_mm, std::ostream& out) {
  const SheetSpec sheet = load_sheet(opts);
  const double dx = from_mm(dx_mm);
  if (opts.explain) print_explain(out, sheet, {dx});
  const BoundaryResponse boundary = boundary_response(sheet, dx);
  const DiscreteResponse discrete = discrete_response(sheet, dx);
  out << "sheet " << sheet.id << "  delta_x = " << g6(dx_mm) << " mm\n"
      << "a = " << g6(to_mm(boundary.state.semi_major)) << " mm\n"
      << "b = " << g6(to_mm(boundary.state.semi_minor)) << " mm\n"
      << "regime = " << to_string(boundary.regime) << '\n'
      << "link angle = " << g6(discrete.linkage.link_angle * 180.0 / std::numbers::pi) << " deg"
      << (discrete.linkage.clamped ? " (clamped at b_min)" : "") << '\n'
      << "ribbon  l_mm  d_y_mm  d_z_mm  phi_deg  P_N\n";
  for (const RibbonArch& arch : discrete.arches) {
    out << arch.index << "  " << g6(to_mm(arch.rest_length)) << "  " << g6(to_mm(arch.endpoint_gap))
        << "  " << g6(to_mm(arch.depth)) << "  " << g6(arch.force_angle * 180.0 / std::numbers::pi) << "  "
        << g6(arch.compression) << '\n';
  }
  return kOk;
}

int cmd_curve(const SheetOptions& opts, double max_mm, double step_mm, const std::string& out_arg,
              const std::string& svg_arg, std::ostream& out, std::ostream& err) {
  const SheetSpec sheet = load_sheet(opts);
  const ForceCurve curve = force_curve(sheet, from_mm(max_mm), from_mm(step_mm));
  if (opts.explain) {
    std::vector<double> dxs;
    for (const auto& s : curve.samples) dxs.push_back(s.displacement);
    print_explain(err, sheet, dxs);
  }
  err << kLowerBoundBanner << '\n';
  if (out_arg.empty()) {
    write_curve_csv(out, curve);
  } else {
    const auto path = output_path(out_arg);
    std::ofstream f = open_output(path);
    write_curve_csv(f, curve);
    if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
    out << "wrote " << curve.samples.size() << " samples to " << path.string() << '\n';
  }
  if (!svg_arg.empty()) {
    const auto path = output_path(svg_arg);
    emit_svg(curve, path);
    out << "wrote plot to " << path.string() << '\n';
  }
  return kOk;
}

int cmd_sweep(const SheetOptions& opts, const std::string& param, double from, double to,
              double step, double max_mm, double dx_step_mm, const std::string& out_arg,
              std::ostream& out, std::ostream& err) {
  if (!(step > 0.0)) throw InvalidArgument("--step must be positive");
  if (!(to >= from)) throw InvalidArgument("--to must not be below --from");
  const SheetSpec base = load_sheet(opts);
  std::vector<double> values;
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step * (1.0 + 1e-12)));
  for (std::size_t i = 0; i <= count; ++i) values.push_back(from + static_cast<double>(i) * step);

  // Evaluate every value concurrently, then write in sweep order.
  std::vector<std::future<ForceCurve>> jobs;
  for (double v : values) {
    const SheetSpec sheet = with_parameter(base, param, v);
    jobs.push_back(std::async(std::launch::async, [sheet, max_mm, dx_step_mm] {
      return force_curve(sheet, from_mm(max_mm), from_mm(dx_step_mm));
    }));
  }
  std::ostringstream csv;
  csv << "param,value," << kCurveCsvHeader << '\n';
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const ForceCurve curve = jobs[k].get();
    std::ostringstream body;
    write_curve_csv(body, curve);
    std::istringstream lines(body.str());
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
      csv << param << ',' << format_exact(values[k]) << ',' << line << '\n';
    }
  }
  if (opts.explain) print_explain(err, base, {});
  err << kLowerBoundBanner << '\n';
  if (out_arg.empty()) {
    out << csv.str();
  } else {
    const auto path = output_path(out_arg);
    std::ofstream f = open_output(path);
    f << csv.str();
    out << "wrote " << values.size() << " curves to " << path.string() << '\n';
  }
  return kOk;
}

int cmd_actuator(const SheetOptions& opts, double rating, double max_mm, std::ostream& out) {
  const SheetSpec sheet = load_sheet(opts);
  const ActuatorReport report = actuator_margin(sheet, rating, from_mm(max_mm));
  if (opts.explain) print_explain(out, sheet, {report.max_force_at});
  out << kLowerBoundBanner << '\n'
      << "sheet " << sheet.id << "  range 0.." << g6(max_mm) << " mm\n"
      << "max F_tensile = " << g6(report.max_force) << " N at delta_x = "
      << g6(to_mm(report.max_force_at)) << " mm\n"
      << "rating = " << g6(report.rating) << " N\n"
      << "margin = " << g6(report.margin) << " N\n"
      << (report.pass ? "PASS" : "FAIL") << '\n';
  return kOk;
}

int cmd_validate(const SheetOptions& opts, const std::string& data_path, std::ostream& out) {
  const SheetSpec sheet = load_sheet(opts);
  std::ifstream in(data_path);
  if (!in) throw std::runtime_error("cannot read measurements '" + data_path + "'");
  std::vector<Measurement> rows;
  try {
    rows = read_measurements_csv(in);
  } catch (const FormatError& e) {
    throw FormatError(data_path + ": " + e.what(), e.row());
  }
  const ValidationReport report = validate_against_measurements(sheet, rows);
  if (opts.explain) {
    std::vector<double> dxs;
    for (const auto& r : rows) dxs.push_back(from_mm(r.delta_x_mm));
    print_explain(out, sheet, dxs);
  }
  out << kLowerBoundBanner << '\n'
      << "sheet " << sheet.id << "  data " << data_path << '\n'
      << "MAE force = " << g6(report.mae_force) << " N over " << report.n_points << " rows\n";
  if (report.mae_half_width) {
    out << "MAE half-width = " << g6(to_mm(*report.mae_half_width)) << " mm over "
        << report.n_half_width << " rows\n";
  } else {
    out << "MAE half-width = n/a (no half-width column values)\n";
  }
  out << "skipped rows = " << report.n_skipped << '\n';
  return kOk;
}

int cmd_oracle(const SheetOptions& opts, const std::string& dx_list, int nodes,
               const std::string& dump_prefix, std::ostream& out) {
  const SheetSpec sheet = load_sheet(opts);
  const std::vector<double> dxs = parse_mm_list(dx_list);
  const LowerBoundReport report = check_lower_bound(sheet, dxs, nodes);
  if (opts.explain) print_explain(out, sheet, dxs);
  out << "sheet " << sheet.id << " boundary ring, " << nodes << " nodes\n"
      << "delta_x_mm  F_bend_N  F_oracle_N  slack_N\n";
  bool numerical_failure = false;
  for (const LowerBoundPoint& p : report.points) {
    out << g6(to_mm(p.displacement)) << "  " << g6(p.model_force) << "  ";
    if (p.error) {
      numerical_failure = true;
      out << "error: " << *p.error << '\n';
    } else {
      out << g6(p.oracle_force) << "  " << g6(p.slack) << '\n';
    }
  }
  out << "lower bound " << (report.passed ? "HOLDS" : "VIOLATED") << " (tolerance "
      << g6(report.tolerance) << " N)\n";
  if (!dump_prefix.empty()) {
    const RingModel ring = ring_from_sheet(sheet, nodes);
    for (double dx : dxs) {
      const RingSolution sol = solve_ring(ring, dx);
      const auto path = output_path(dump_prefix + "_" + format_exact(to_mm(dx)) + "mm.csv");
      std::ofstream f = open_output(path);
      write_ring_csv(f, sol.ring);
      out << "wrote ring shape to " << path.string() << '\n';
    }
  }
  return numerical_failure ? kNumerical : kOk;
}

}  // namespace

std::vector<std::string> explain(const SheetSpec& sheet, const std::vector<double>& displacements) {
  std::vector<std::string> lines;
  auto has = [&sheet](std::string_view field) {
    const auto& f = sheet.assumed_fields;
    return std::find(f.begin(), f.end(), field) != f.end();
  };
  if (has("n_discrete")) {
    lines.push_back("n_discrete = " + std::to_string(sheet.n_discrete) + " (engine default, not measured)");
  }
  if (has("mesh_counts")) {
    std::string counts;
    for (int n : sheet.mesh_counts) counts += (counts.empty() ? "" : ",") + std::to_string(n);
    lines.push_back("mesh_counts = [" + counts + "] (engine default, not measured)");
  }
  if (has("mesh_section_length")) {
    lines.push_back("mesh_section_length = " + g6(to_mm(sheet.mesh_section_length)) +
                    " mm (engine default: central ribbon length / (max mesh count + 1))");
  }
  if (has("attachment_half_width")) {
    lines.push_back("attachment_half_width b_min = " + g6(to_mm(sheet.attachment_half_width)) +
                    " mm (engine default, not measured)");
  }
  lines.push_back("boundary regime: bending while b > b_min, stretching once b <= b_min");
  try {
    lines.push_back("regime switch at delta_x = " + g6(to_mm(regime_switch_displacement(sheet))) +
                    " mm; the boundary force is discontinuous there");
  } catch (const NumericalFailure&) {
    lines.push_back("regime switch not found below delta_x = 2r");
  }
  lines.push_back("stretching starts at delta_x = r(pi-2) = " +
                  g6(to_mm(flattening_displacement(sheet.radius))) + " mm");
  std::string clamped;
  for (double dx : displacements) {
    if (linkage_state(sheet, dx).clamped) clamped += (clamped.empty() ? "" : ", ") + g6(to_mm(dx));
  }
  if (!clamped.empty()) {
    lines.push_back("link angle and ribbon gaps clamped to b_min at delta_x = " + clamped + " mm");
  }
  return lines;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kirigami sheet force and geometry model"};
  app.name("kirimech");
  app.require_subcommand(1);

  SheetOptions geometry_opts, curve_opts, sweep_opts, actuator_opts, validate_opts, oracle_opts;
  double dx_mm = 0.0;
  double curve_max = 25.0, curve_step = 5.0;
  std::string curve_out, curve_svg;
  std::string sweep_param, sweep_out;
  double sweep_from = 0.0, sweep_to = 0.0, sweep_step = 0.0, sweep_max = 25.0, sweep_dx_step = 5.0;
  double rating = 50.0, actuator_max = 25.0;
  std::string data_path;
  std::string oracle_dx = "5,10,15,20";
  int oracle_nodes = 256;
  std::string oracle_dump;

  auto* geometry = app.add_subcommand("geometry", "Deformed boundary and ribbon arches at one displacement");
  add_sheet_options(geometry, geometry_opts);
  geometry->add_option("--dx", dx_mm, "Displacement (mm)")->required();

  auto* curve = app.add_subcommand("curve", "Force-displacement curve as CSV");
  add_sheet_options(curve, curve_opts);
  curve->add_option("--max", curve_max, "Largest displacement (mm)")->capture_default_str();
  curve->add_option("--step", curve_step, "Displacement increment (mm)")->capture_default_str();
  curve->add_option("--out", curve_out, "CSV path (default: stdout)");
  curve->add_option("--svg", curve_svg, "Also write an SVG plot");

  auto* sweep = app.add_subcommand("sweep", "One curve per value of a sheet parameter");
  add_sheet_options(sweep, sweep_opts);
  sweep->add_option("--param", sweep_param,
                    "thickness | ribbon_width | radius | attachment_half_width | "
                    "mesh_section_length (mm) or youngs_modulus (MPa)")
      ->required();
  sweep->add_option("--from", sweep_from, "First value")->required();
  sweep->add_option("--to", sweep_to, "Last value")->required();
  sweep->add_option("--step", sweep_step, "Parameter increment")->required();
  sweep->add_option("--max", sweep_max, "Largest displacement (mm)")->capture_default_str();
  sweep->add_option("--dx-step", sweep_dx_step, "Displacement increment (mm)")->capture_default_str();
  sweep->add_option("--out", sweep_out, "CSV path (default: stdout)");

  auto* actuator = app.add_subcommand("actuator", "Check an actuator rating against the peak force");
  add_sheet_options(actuator, actuator_opts);
  actuator->add_option("--rating", rating, "Actuator rating (N)")->capture_default_str();
  actuator->add_option("--max", actuator_max, "Actuation range (mm)")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Mean absolute errors against a measurement CSV");
  add_sheet_options(validate, validate_opts);
  validate->add_option("--data", data_path, "CSV with delta_x_mm, force_N, half_width_mm")->required();

  auto* oracle = app.add_subcommand("oracle", "Compare the bend force with the elastic-ring oracle");
  add_sheet_options(oracle, oracle_opts);
  oracle->add_option("--dx", oracle_dx, "Comma-separated displacements (mm)")->capture_default_str();
  oracle->add_option("--nodes", oracle_nodes, "Ring nodes (even, >= 64)")->capture_default_str();
  oracle->add_option("--dump", oracle_dump, "Write converged shapes to <prefix>_<dx>mm.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (geometry->parsed()) return cmd_geometry(geometry_opts, dx_mm, out);
    if (curve->parsed()) return cmd_curve(curve_opts, curve_max, curve_step, curve_out, curve_svg, out, err);
    if (sweep->parsed()) {
      return cmd_sweep(sweep_opts, sweep_param, sweep_from, sweep_to, sweep_step, sweep_max,
                       sweep_dx_step, sweep_out, out, err);
    }
    if (actuator->parsed()) return cmd_actuator(actuator_opts, rating, actuator_max, out);
    if (validate->parsed()) return cmd_validate(validate_opts, data_path, out);
    if (oracle->parsed()) return cmd_oracle(oracle_opts, oracle_dx, oracle_nodes, oracle_dump, out);
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNumerical;
  } catch (const NotFound& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace kirimech::cli
