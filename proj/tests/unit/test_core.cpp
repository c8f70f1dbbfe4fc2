#include <doctest.h>

#include <algorithm>
#include <string>

#include "kirimech/core.hpp"
#include "kirimech/errors.hpp"
#include "kirimech/units.hpp"

using namespace kirimech;
using units::from_mm;

TEST_SUITE("core") {
  TEST_CASE("cross section of a 1 mm square ribbon") {
    const CrossSection s = make_cross_section(from_mm(1.0), from_mm(1.0));
    CHECK(s.second_moment == doctest::Approx(8.3333e-14).epsilon(1e-4));
    CHECK(s.area == doctest::Approx(1.0e-6).epsilon(1e-12));
  }

  TEST_CASE("cross section of sheet D") {
    const CrossSection s = make_cross_section(from_mm(0.8), from_mm(0.25));
    CHECK(s.second_moment == doctest::Approx(1.0417e-15).epsilon(1e-4));
  }

  TEST_CASE("degenerate cross sections are rejected") {
    CHECK_THROWS_AS(make_cross_section(from_mm(1.0), 0.0), InvalidArgument);
    CHECK_THROWS_AS(make_cross_section(-1.0, from_mm(1.0)), InvalidArgument);
  }

  TEST_CASE("built-in materials") {
    CHECK(lookup_material("TPU").youngs_modulus == units::from_mpa(14.77));
    CHECK(lookup_material("PET").youngs_modulus == 3.57e9);
  }

  TEST_CASE("unknown material lists the available names") {
    try {
      lookup_material("unobtanium");
      FAIL("expected NotFound");
    } catch (const NotFound& e) {
      const std::string what = e.what();
      CHECK(what.find("unobtanium") != std::string::npos);
      CHECK(what.find("PET") != std::string::npos);
      CHECK(what.find("TPU") != std::string::npos);
    }
  }

  TEST_CASE("registry accepts new materials and rejects bad ones") {
    MaterialRegistry reg;
    reg.add({"Nylon", units::from_mpa(1700.0)});
    CHECK(reg.contains("Nylon"));
    CHECK(reg.names().size() == 3);
    CHECK_THROWS_AS(reg.add({"", 1.0}), InvalidArgument);
    CHECK_THROWS_AS(reg.add({"Gel", 0.0}), InvalidArgument);
  }

  TEST_CASE("preset A") {
    const SheetSpec a = sheet_preset("A");
    CHECK(a.material.name == "TPU");
    CHECK(a.radius == from_mm(22.24));
    CHECK(a.ribbon_section.thickness == from_mm(1.0));
    CHECK(a.ribbon_section.width == from_mm(1.0));
    CHECK(a.bending_rigidity_boundary() == doctest::Approx(1.231e-6).epsilon(1e-3));
  }

  TEST_CASE("preset D") {
    const SheetSpec d = sheet_preset("D");
    CHECK(d.material.name == "PET");
    CHECK(d.radius == from_mm(22.14));
    CHECK(d.ribbon_section.thickness == from_mm(0.25));
    CHECK(d.ribbon_section.width == from_mm(0.8));
  }

  TEST_CASE("preset C shares n_discrete with A") {
    const SheetSpec c = sheet_preset("C");
    CHECK(c.material.name == "TPU");
    CHECK(c.radius == from_mm(16.68));
    CHECK(c.ribbon_section.width == from_mm(0.75));
    CHECK(c.n_discrete == sheet_preset("A").n_discrete);
  }

  TEST_CASE("unknown preset") { CHECK_THROWS_AS(sheet_preset("Z"), NotFound); }

  TEST_CASE("presets record the assumed fields") {
    for (const std::string& id : preset_ids()) {
      const SheetSpec s = sheet_preset(id);
      CHECK(s.n_discrete % 2 == 1);
      CHECK(s.mesh_counts.size() == static_cast<std::size_t>(s.n_discrete));
      CHECK(std::find(s.assumed_fields.begin(), s.assumed_fields.end(), "n_discrete") !=
            s.assumed_fields.end());
    }
  }

  TEST_CASE("validate rejects inconsistent sheets") {
    SheetSpec s = sheet_preset("A");
    s.n_discrete = 4;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    s = sheet_preset("A");
    s.mesh_counts.pop_back();
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    s = sheet_preset("A");
    s.attachment_half_width = s.radius;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    s = sheet_preset("A");
    s.material.youngs_modulus = 0.0;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
  }

  TEST_CASE("modulus scaling leaves geometry untouched") {
    const SheetSpec a = sheet_preset("A");
    const SheetSpec b = a.with_modulus_scaled(2.0);
    CHECK(b.material.youngs_modulus == 2.0 * a.material.youngs_modulus);
    CHECK(b.ribbon_section == a.ribbon_section);
    CHECK(b.radius == a.radius);
  }

  TEST_CASE("mm grid snapping is idempotent") {
    for (double mm : {0.0, 0.1, 5.0, 25.39, 30.39, 123.456}) {
      const double x = units::snap_to_mm_grid(from_mm(mm));
      CHECK(units::snap_to_mm_grid(x) == x);
      CHECK(units::from_mm(units::to_mm(x)) == x);
    }
  }
}
