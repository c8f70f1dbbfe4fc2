#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kirimech/boundary.hpp"
#include "kirimech/core.hpp"
#include "kirimech/errors.hpp"
#include "kirimech/units.hpp"

using namespace kirimech;
using units::from_mm;
using units::to_mm;

namespace {

// Independent semi-minor solve: plain bisection on the perimeter residual.
double reference_semi_minor(double r, double dx) {
  const double a = r + dx / 2.0;
  auto residual = [&](double b) {
    return std::numbers::pi * (3.0 * (a + b) - std::sqrt((3.0 * a + b) * (a + 3.0 * b))) -
           2.0 * std::numbers::pi * r;
  };
  double lo = 0.0, hi = r;
  if (residual(lo) >= 0.0) return 0.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("boundary") {
  TEST_CASE("semi-major axis") {
    CHECK(semi_major(from_mm(22.24), 0.0) == from_mm(22.24));
    CHECK(to_mm(semi_major(from_mm(22.24), from_mm(10.0))) == doctest::Approx(27.24).epsilon(1e-14));
    CHECK(to_mm(semi_major(from_mm(16.68), from_mm(5.0))) == doctest::Approx(19.18).epsilon(1e-14));
    CHECK_THROWS_AS(semi_major(from_mm(22.24), -1e-3), InvalidArgument);
  }

  TEST_CASE("semi-minor axis examples") {
    const double r = from_mm(22.24);
    CHECK(solve_semi_minor(r, 0.0) == r);
    CHECK(to_mm(solve_semi_minor(r, from_mm(10.0))) == doctest::Approx(16.6).epsilon(5e-3));
    // The perimeter formula flattens fully at 25.68 mm, so b is still 1.14 mm here.
    const double near_flat = solve_semi_minor(r, from_mm(25.39));
    CHECK(near_flat == doctest::Approx(reference_semi_minor(r, from_mm(25.39))).epsilon(1e-9));
    CHECK(to_mm(near_flat) < 1.2);
    CHECK(solve_semi_minor(r, from_mm(25.7)) == 0.0);
  }

  TEST_CASE("semi-minor axis matches an independent bisection") {
    for (double r_mm : {10.0, 16.68, 22.14, 22.24, 40.0}) {
      for (double dx_mm = 0.5; dx_mm < 1.1 * r_mm; dx_mm += 0.5) {
        const double r = from_mm(r_mm), dx = from_mm(dx_mm);
        CHECK(solve_semi_minor(r, dx) == doctest::Approx(reference_semi_minor(r, dx)).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("perimeter is conserved") {
    const double r = from_mm(22.24);
    for (double dx_mm = 0.0; dx_mm <= 25.0; dx_mm += 0.25) {
      const BoundaryState s = boundary_state(r, from_mm(dx_mm));
      if (s.semi_minor == 0.0) continue;
      CHECK(std::abs(ellipse_perimeter(s.semi_major, s.semi_minor) - 2.0 * std::numbers::pi * r) <=
            1e-10 * 2.0 * std::numbers::pi * r);
    }
  }

  TEST_CASE("semi-minor axis decreases strictly until flattening") {
    const double r = from_mm(22.24);
    double prev = solve_semi_minor(r, 0.0);
    for (double dx_mm = 0.1; dx_mm < 30.0; dx_mm += 0.1) {
      const double b = solve_semi_minor(r, from_mm(dx_mm));
      if (prev == 0.0) {
        CHECK(b == 0.0);
      } else {
        CHECK(b < prev);
      }
      prev = b;
    }
  }

  TEST_CASE("bend force") {
    const SheetSpec a = sheet_preset("A");
    CHECK(bend_force(a, 0.0) == 0.0);
    const double f = bend_force(a, from_mm(10.0));
    CHECK(f == doctest::Approx(7.5e-3).epsilon(5e-3));
    CHECK(bend_force(a.with_modulus_scaled(2.0), from_mm(10.0)) == 2.0 * f);
  }

  TEST_CASE("stretch force threshold and value") {
    const SheetSpec a = sheet_preset("A");
    CHECK(stretch_force(a, from_mm(20.0)) == 0.0);
    CHECK(stretch_force(a, from_mm(25.389)) == 0.0);
    CHECK(to_mm(flattening_displacement(a.radius)) == doctest::Approx(25.39).epsilon(1e-4));
    CHECK(stretch_force(a, flattening_displacement(a.radius)) == 0.0);
    const double expected = 2.0 * a.material.youngs_modulus * 1e-6 * from_mm(5.0) /
                            (std::numbers::pi * from_mm(22.24));
    CHECK(stretch_force(a, from_mm(30.39)) == doctest::Approx(expected).epsilon(1e-3));
    CHECK(stretch_force(a, from_mm(30.39)) == doctest::Approx(2.11).epsilon(2e-3));
  }

  TEST_CASE("regime selection") {
    const SheetSpec a = sheet_preset("A");
    CHECK(boundary_force(a, 0.0) == 0.0);
    const BoundaryResponse r10 = boundary_response(a, from_mm(10.0));
    CHECK(r10.regime == BoundaryRegime::bend);
    CHECK(r10.force == bend_force(a, from_mm(10.0)));
    const BoundaryResponse r28 = boundary_response(a, from_mm(28.0));
    CHECK(r28.regime == BoundaryRegime::stretch);
    CHECK(r28.force == stretch_force(a, from_mm(28.0)));
    CHECK(to_string(BoundaryRegime::bend) == "bend");
    CHECK(to_string(BoundaryRegime::stretch) == "stretch");
  }

  TEST_CASE("regime switch sits where b reaches b_min") {
    const SheetSpec a = sheet_preset("A");
    const double sw = regime_switch_displacement(a);
    CHECK(solve_semi_minor(a.radius, sw) <= a.attachment_half_width);
    CHECK(solve_semi_minor(a.radius, std::nextafter(sw, 0.0)) > a.attachment_half_width);
  }

  TEST_CASE("bend force is monotone in displacement") {
    for (const auto& id : preset_ids()) {
      const SheetSpec s = sheet_preset(id);
      double prev = 0.0;
      for (double dx_mm = 0.5; dx_mm <= 20.0; dx_mm += 0.5) {
        const double f = bend_force(s, from_mm(dx_mm));
        CHECK(f > prev);
        prev = f;
      }
    }
  }

  TEST_CASE("negative displacement is rejected") {
    const SheetSpec a = sheet_preset("A");
    CHECK_THROWS_AS(boundary_force(a, -1e-3), InvalidArgument);
  }
}
