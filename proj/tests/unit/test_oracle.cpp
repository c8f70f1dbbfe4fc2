#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "kirimech/boundary.hpp"
#include "kirimech/core.hpp"
#include "kirimech/errors.hpp"
#include "kirimech/oracle.hpp"
#include "kirimech/units.hpp"

using namespace kirimech;
using units::from_mm;

TEST_SUITE("oracle") {
  TEST_CASE("ring construction") {
    const SheetSpec a = sheet_preset("A");
    const RingModel ring = ring_from_sheet(a);
    CHECK(ring.n_nodes == 256);
    CHECK(ring.bending_stiffness == doctest::Approx(1.231e-6).epsilon(1e-3));
    CHECK(ring.node_positions.size() == 256);
    for (const Point2& p : ring.node_positions) {
      CHECK(std::hypot(p.x, p.y) == doctest::Approx(ring.rest_span() / 2.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(make_ring(a.radius, 1e-6, 63), InvalidArgument);
    CHECK_THROWS_AS(make_ring(a.radius, 1e-6, 32), InvalidArgument);
    CHECK_THROWS_AS(make_ring(-1.0, 1e-6, 64), InvalidArgument);
  }

  TEST_CASE("rest state") {
    const RingModel ring = ring_from_sheet(sheet_preset("A"));
    CHECK(simulate_ring_bend(ring, 0.0) == 0.0);
    const RingSolution sol = solve_ring(ring, 0.0);
    CHECK(std::abs(sol.energy) <= 1e-25);
  }

  TEST_CASE("oracle bounds the bend force at 10 mm") {
    const SheetSpec a = sheet_preset("A");
    const RingModel ring = ring_from_sheet(a, 256);
    const double dx = from_mm(10.0);
    const double f = simulate_ring_bend(ring, dx);
    CHECK(f >= bend_force(a, dx));
    CHECK(bend_force(a, dx) == doctest::Approx(7.5e-3).epsilon(5e-3));
  }

  TEST_CASE("small deflection agrees with linear theory") {
    const SheetSpec a = sheet_preset("A");
    const RingModel ring = ring_from_sheet(a, 256);
    const double f = simulate_ring_bend(ring, from_mm(2.0));
    CHECK(std::abs(f - bend_force(a, from_mm(2.0))) <= 0.15 * bend_force(a, from_mm(2.0)));
  }

  TEST_CASE("multiplier force agrees with the energy derivative") {
    const RingModel ring = ring_from_sheet(sheet_preset("A"), 128);
    for (double dx_mm : {3.0, 12.0}) {
      const RingSolution sol = solve_ring(ring, from_mm(dx_mm));
      CHECK(sol.multiplier_force ==
            doctest::Approx(simulate_ring_bend(ring, from_mm(dx_mm))).epsilon(1e-5));
    }
  }

  TEST_CASE("converged solution is stationary, monotone and symmetric") {
    const RingModel ring = ring_from_sheet(sheet_preset("A"), 256);
    const RingSolution sol = solve_ring(ring, from_mm(15.0));
    CHECK(sol.stationarity < 1e-8);
    for (std::size_t k = 1; k < sol.energy_history.size(); ++k) {
      CHECK(sol.energy_history[k] <= sol.energy_history[k - 1]);
    }
    const int n = sol.ring.n_nodes;
    const auto& p = sol.ring.node_positions;
    const double tol = 1e-6 * ring.radius;
    CHECK(std::abs(p[0].x + ring.rest_span() / 2.0 + from_mm(15.0) / 2.0) <= tol);
    CHECK(std::abs(p[static_cast<std::size_t>(n / 2)].x - (ring.rest_span() + from_mm(15.0)) / 2.0) <= tol);
    for (int k = 1; k < n / 2; ++k) {
      const Point2& q = p[static_cast<std::size_t>(k)];
      const Point2& mirror_x = p[static_cast<std::size_t>(n - k)];
      const Point2& mirror_y = p[static_cast<std::size_t>(n / 2 - k)];
      CHECK(std::abs(q.x - mirror_x.x) <= tol);
      CHECK(std::abs(q.y + mirror_x.y) <= tol);
      CHECK(std::abs(q.x + mirror_y.x) <= tol);
      CHECK(std::abs(q.y - mirror_y.y) <= tol);
    }
  }

  TEST_CASE("segments stay inextensible") {
    const RingModel ring = ring_from_sheet(sheet_preset("B"), 128);
    const RingSolution sol = solve_ring(ring, from_mm(18.0));
    const auto& p = sol.ring.node_positions;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const Point2& q = p[(k + 1) % p.size()];
      CHECK(std::hypot(q.x - p[k].x, q.y - p[k].y) ==
            doctest::Approx(ring.segment_length()).epsilon(1e-10));
    }
  }

  TEST_CASE("doubling the nodes changes the force by under 2 percent") {
    const SheetSpec a = sheet_preset("A");
    const double coarse = simulate_ring_bend(ring_from_sheet(a, 256), from_mm(10.0));
    const double fine = simulate_ring_bend(ring_from_sheet(a, 512), from_mm(10.0));
    CHECK(std::abs(fine - coarse) < 0.02 * fine);
  }

  TEST_CASE("lower bound holds on every preset") {
    for (const auto& id : preset_ids()) {
      const SheetSpec s = sheet_preset(id);
      const double limit = 0.85 * flattening_displacement(s.radius);
      std::vector<double> dxs;
      for (double frac : {0.1, 0.4, 0.7, 1.0}) dxs.push_back(frac * limit);
      const LowerBoundReport r = check_lower_bound(s, dxs, 128);
      CHECK_MESSAGE(r.passed, "sheet ", id);
      for (const auto& p : r.points) {
        CHECK_FALSE(p.error);
        CHECK(p.slack >= -r.tolerance);
      }
    }
  }

  TEST_CASE("near-linear regime") {
    const LowerBoundReport r = check_lower_bound(sheet_preset("A"), {from_mm(1.0)});
    REQUIRE(r.points.size() == 1);
    CHECK(r.points[0].slack >= 0.0);
    CHECK(r.points[0].slack <= 0.1 * r.points[0].model_force);
  }

  TEST_CASE("lower-bound argument errors") {
    const SheetSpec a = sheet_preset("A");
    CHECK_THROWS_AS(check_lower_bound(a, {}), InvalidArgument);
    CHECK_THROWS_AS(check_lower_bound(a, {from_mm(5.0), from_mm(1.0)}), InvalidArgument);
  }

  TEST_CASE("failures are reported per point") {
    const SheetSpec a = sheet_preset("A");
    // 40 mm is past full flattening of the ring; 5 mm still solves.
    const LowerBoundReport r = check_lower_bound(a, {from_mm(5.0), from_mm(40.0)}, 64);
    REQUIRE(r.points.size() == 2);
    CHECK_FALSE(r.points[0].error);
    CHECK(r.points[1].error);
    CHECK_FALSE(r.passed);
  }

  TEST_CASE("iteration budget") {
    const RingModel ring = ring_from_sheet(sheet_preset("A"), 64);
    RingSolverOptions opts;
    opts.max_iterations = 1;
    CHECK_THROWS_AS(solve_ring(ring, from_mm(10.0), opts), NumericalFailure);
    CHECK_THROWS_AS(solve_ring(ring, -1.0), InvalidArgument);
  }

  TEST_CASE("ring CSV") {
    const RingModel ring = make_ring(from_mm(10.0), 1e-6, 64);
    std::ostringstream out;
    write_ring_csv(out, ring);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "x_mm,y_mm");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 64);
  }
}
