#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "kirimech/boundary.hpp"
#include "kirimech/cli.hpp"
#include "kirimech/config.hpp"
#include "kirimech/core.hpp"
#include "kirimech/discrete.hpp"
#include "kirimech/errors.hpp"
#include "kirimech/mesh.hpp"
#include "kirimech/model.hpp"
#include "kirimech/oracle.hpp"
#include "kirimech/svg.hpp"

namespace py = pybind11;
using namespace kirimech;

namespace {

std::string curve_csv(const ForceCurve& curve) {
  std::ostringstream out;
  write_curve_csv(out, curve);
  return out.str();
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"kirimech"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_kirimech, m) {
  m.doc() = "Kirigami sheet force and geometry model (SI units)";

  py::register_exception<NotFound>(m, "NotFoundError", PyExc_KeyError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  py::class_<Material>(m, "Material")
      .def(py::init<std::string, double>(), py::arg("name"), py::arg("youngs_modulus"))
      .def_readwrite("name", &Material::name)
      .def_readwrite("youngs_modulus", &Material::youngs_modulus)
      .def("__repr__", [](const Material& mat) {
        return "Material(" + mat.name + ", " + std::to_string(mat.youngs_modulus) + " Pa)";
      });

  py::class_<CrossSection>(m, "CrossSection")
      .def_readonly("width", &CrossSection::width)
      .def_readonly("thickness", &CrossSection::thickness)
      .def_readonly("second_moment", &CrossSection::second_moment)
      .def_readonly("area", &CrossSection::area);
  m.def("make_cross_section", &make_cross_section, py::arg("width"), py::arg("thickness"));

  py::class_<SheetSpec>(m, "SheetSpec")
      .def_readwrite("id", &SheetSpec::id)
      .def_readwrite("radius", &SheetSpec::radius)
      .def_readwrite("boundary_section", &SheetSpec::boundary_section)
      .def_readwrite("ribbon_section", &SheetSpec::ribbon_section)
      .def_readwrite("n_discrete", &SheetSpec::n_discrete)
      .def_readwrite("mesh_counts", &SheetSpec::mesh_counts)
      .def_readwrite("mesh_section_length", &SheetSpec::mesh_section_length)
      .def_readwrite("attachment_half_width", &SheetSpec::attachment_half_width)
      .def_readwrite("material", &SheetSpec::material)
      .def_readonly("assumed_fields", &SheetSpec::assumed_fields)
      .def("validate", &SheetSpec::validate)
      .def("bending_rigidity_boundary", &SheetSpec::bending_rigidity_boundary)
      .def("bending_rigidity_ribbon", &SheetSpec::bending_rigidity_ribbon)
      .def("with_modulus_scaled", &SheetSpec::with_modulus_scaled, py::arg("k"));

  m.def("lookup_material", &lookup_material, py::arg("name"));
  m.def("sheet_preset", [](const std::string& id) { return sheet_preset(id); }, py::arg("id"));
  m.def("preset_ids", &preset_ids);
  m.def("make_sheet", &make_sheet, py::arg("id"), py::arg("radius"), py::arg("thickness"),
        py::arg("ribbon_width"), py::arg("material"));
  m.def("load_config_sheet",
        [](const std::string& path, const std::string& id) { return resolve_sheet(id, load_config(path)); },
        py::arg("path"), py::arg("id"));

  py::enum_<BoundaryRegime>(m, "BoundaryRegime")
      .value("bend", BoundaryRegime::bend)
      .value("stretch", BoundaryRegime::stretch);

  m.def("ellipse_perimeter", &ellipse_perimeter, py::arg("semi_major"), py::arg("semi_minor"));
  m.def("semi_major", &semi_major, py::arg("radius"), py::arg("delta_x"));
  m.def("solve_semi_minor", &solve_semi_minor, py::arg("radius"), py::arg("delta_x"));
  m.def("bend_force", &bend_force, py::arg("sheet"), py::arg("delta_x"));
  m.def("stretch_force", &stretch_force, py::arg("sheet"), py::arg("delta_x"));
  m.def("boundary_force", &boundary_force, py::arg("sheet"), py::arg("delta_x"));
  m.def("flattening_displacement", &flattening_displacement, py::arg("radius"));
  m.def("regime_switch_displacement", &regime_switch_displacement, py::arg("sheet"));

  m.def(
      "solve_catenary",
      [](double rest_length, double endpoint_gap) {
        const CatenaryShape s = solve_catenary(rest_length, endpoint_gap);
        return py::make_tuple(s.shape_param, s.depth);
      },
      py::arg("rest_length"), py::arg("endpoint_gap"), "Returns (shape_param, depth).");
  m.def("discrete_force", &discrete_force, py::arg("sheet"), py::arg("delta_x"));
  m.def(
      "four_bar_force",
      [](const SheetSpec& sheet, double delta_x) {
        const DiscreteResponse r = discrete_response(sheet, delta_x);
        return four_bar_balance(r.arches, sheet.n_discrete, r.linkage).force;
      },
      py::arg("sheet"), py::arg("delta_x"));
  m.def("mesh_force", &mesh_force, py::arg("sheet"), py::arg("delta_x"));

  py::class_<ForceBreakdown>(m, "ForceBreakdown")
      .def_readonly("displacement", &ForceBreakdown::displacement)
      .def_readonly("semi_major", &ForceBreakdown::semi_major)
      .def_readonly("semi_minor", &ForceBreakdown::semi_minor)
      .def_readonly("regime", &ForceBreakdown::regime)
      .def_readonly("theta_clamped", &ForceBreakdown::theta_clamped)
      .def_readonly("f_boundary", &ForceBreakdown::f_boundary)
      .def_readonly("f_discrete", &ForceBreakdown::f_discrete)
      .def_readonly("f_mesh", &ForceBreakdown::f_mesh)
      .def_readonly("f_tensile", &ForceBreakdown::f_tensile);
  m.def("tensile_force", &tensile_force, py::arg("sheet"), py::arg("delta_x"));

  py::class_<ForceCurve>(m, "ForceCurve")
      .def_readonly("sheet_id", &ForceCurve::sheet_id)
      .def_readonly("samples", &ForceCurve::samples)
      .def_readonly("step", &ForceCurve::step)
      .def("to_csv", &curve_csv)
      .def("to_svg", &render_svg);
  m.def("force_curve", &force_curve, py::arg("sheet"), py::arg("max_displacement"), py::arg("step"));

  py::class_<ActuatorReport>(m, "ActuatorReport")
      .def_readonly("rating", &ActuatorReport::rating)
      .def_readonly("max_force", &ActuatorReport::max_force)
      .def_readonly("max_force_at", &ActuatorReport::max_force_at)
      .def_readonly("max_displacement", &ActuatorReport::max_displacement)
      .def_readonly("margin", &ActuatorReport::margin)
      .def_readonly("passed", &ActuatorReport::pass);
  m.def("actuator_margin", &actuator_margin, py::arg("sheet"), py::arg("rating"),
        py::arg("max_displacement"), py::arg("resolution") = 1.0e-4);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("mae_force", &ValidationReport::mae_force)
      .def_readonly("mae_half_width", &ValidationReport::mae_half_width)
      .def_readonly("n_points", &ValidationReport::n_points)
      .def_readonly("n_half_width", &ValidationReport::n_half_width)
      .def_readonly("n_skipped", &ValidationReport::n_skipped);
  m.def(
      "validate_csv",
      [](const SheetSpec& sheet, const std::string& csv_text) {
        std::istringstream in(csv_text);
        return validate_against_measurements(sheet, read_measurements_csv(in));
      },
      py::arg("sheet"), py::arg("csv_text"));

  m.def(
      "simulate_ring_bend",
      [](const SheetSpec& sheet, double delta_x, int n_nodes) {
        py::gil_scoped_release release;
        return simulate_ring_bend(ring_from_sheet(sheet, n_nodes), delta_x);
      },
      py::arg("sheet"), py::arg("delta_x"), py::arg("n_nodes") = 256);

  py::class_<LowerBoundPoint>(m, "LowerBoundPoint")
      .def_readonly("displacement", &LowerBoundPoint::displacement)
      .def_readonly("model_force", &LowerBoundPoint::model_force)
      .def_readonly("oracle_force", &LowerBoundPoint::oracle_force)
      .def_readonly("slack", &LowerBoundPoint::slack)
      .def_readonly("error", &LowerBoundPoint::error);
  py::class_<LowerBoundReport>(m, "LowerBoundReport")
      .def_readonly("points", &LowerBoundReport::points)
      .def_readonly("tolerance", &LowerBoundReport::tolerance)
      .def_readonly("passed", &LowerBoundReport::passed);
  m.def(
      "check_lower_bound",
      [](const SheetSpec& sheet, const std::vector<double>& displacements, int n_nodes) {
        py::gil_scoped_release release;
        return check_lower_bound(sheet, displacements, n_nodes);
      },
      py::arg("sheet"), py::arg("displacements"), py::arg("n_nodes") = 256);

  m.def("run_cli", &run_cli, py::arg("args"),
        "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
