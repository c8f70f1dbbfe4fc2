#include <doctest.h>

#include <numeric>
#include <vector>

#include "kirimech/core.hpp"
#include "kirimech/errors.hpp"
#include "kirimech/mesh.hpp"
#include "kirimech/units.hpp"

using namespace kirimech;
using units::from_mm;
using units::to_mm;

TEST_SUITE("mesh") {
  TEST_CASE("first-section deflection") {
    const std::vector<int> equal{1, 1, 1};
    const std::vector<int> mixed{1, 2, 2, 2, 2};
    CHECK(to_mm(first_section_deflection(from_mm(9.0), equal)) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(to_mm(first_section_deflection(from_mm(9.0), mixed)) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(first_section_deflection(0.0, mixed) == 0.0);
    CHECK_THROWS_AS(first_section_deflection(from_mm(9.0), std::vector<int>{}), InvalidArgument);
  }

  TEST_CASE("load path closes on the displacement") {
    SheetSpec s = sheet_preset("A");
    s.mesh_counts = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    const MeshLoadPath path = mesh_load_path(s, from_mm(12.0));
    const double total =
        std::accumulate(path.per_ribbon_deflection.begin(), path.per_ribbon_deflection.end(), 0.0);
    CHECK(total == doctest::Approx(from_mm(12.0)).epsilon(1e-14));
  }

  TEST_CASE("mesh force examples") {
    SheetSpec s = sheet_preset("A");
    CHECK(mesh_force(s, 0.0) == 0.0);
    s.n_discrete = 5;
    s.mesh_counts = {1, 2, 2, 2, 2};
    s.mesh_section_length = from_mm(15.0);
    const double f = mesh_force(s, from_mm(9.0));
    CHECK(f == doctest::Approx(5.25e-2).epsilon(2e-3));
    SheetSpec half = s;
    half.mesh_section_length = from_mm(7.5);
    CHECK(mesh_force(half, from_mm(9.0)) == doctest::Approx(8.0 * f).epsilon(1e-15));
  }

  TEST_CASE("non-positive section length is rejected") {
    SheetSpec s = sheet_preset("A");
    s.mesh_section_length = 0.0;
    CHECK_THROWS_AS(mesh_force(s, from_mm(1.0)), InvalidArgument);
  }

  TEST_CASE("mesh force is linear in displacement and modulus") {
    const SheetSpec s = sheet_preset("C");
    const double f = mesh_force(s, from_mm(4.0));
    CHECK(mesh_force(s, from_mm(8.0)) == doctest::Approx(2.0 * f).epsilon(1e-14));
    CHECK(mesh_force(s.with_modulus_scaled(3.0), from_mm(4.0)) == doctest::Approx(3.0 * f).epsilon(1e-15));
  }
}
