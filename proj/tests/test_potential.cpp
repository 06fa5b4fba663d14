#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "bielap/potential.hpp"
#include "bielap/problems.hpp"
#include "support.hpp"

using namespace bielap;
using std::numbers::pi;

namespace {

NystromSolution unit_density_solution(int example, int m, double delta) {
  const auto spec = example_problem(example);
  const KernelSet kset(split_boundary(spec.curve, delta));
  const auto rule = lobatto_rule(m);
  const SolverConfig config{m, 50.0, 1e-3};
  auto zero = [](double) { return 0.0; };
  const auto sys = assemble(kset, rule, config, {zero, zero, zero});
  auto sol = solve(sys);
  sol.nodal.setOnes();  // bypass the solve: prescribe the density directly
  return sol;
}

}  // namespace

TEST_CASE("min_boundary_distance") {
  SECTION("center of a circular domain") {
    // split needs a corner; use the right-angle curve, whose arc structure
    // is simple, and check against a dense-sampling oracle.
    const auto curve = test_support::right_angle_corner_curve();
    const auto arcs = split_boundary(curve, 1e-3);
    const Point2 p{0.4, 0.35};
    const auto r = min_boundary_distance(arcs, p);
    double oracle = 1e300;
    for (int k = 0; k <= 1'000'000; ++k)
      oracle = std::min(oracle, norm(curve.position(k * 1e-6) - p));
    CHECK(r.d == Catch::Approx(oracle).margin(1e-9));
    CHECK(r.d == Catch::Approx(std::min({r.per_arc[0], r.per_arc[1], r.per_arc[2]})).margin(0.0));
  }
  SECTION("point on the boundary") {
    const auto spec = example_problem(2);
    const auto arcs = split_boundary(spec.curve, spec.default_params.delta);
    const Point2 on_boundary = spec.curve.position(0.37);
    CHECK(min_boundary_distance(arcs, on_boundary).d < 1e-9);
  }
  SECTION("near the reentrant corner of example 1") {
    const auto spec = example_problem(1);
    const auto arcs = split_boundary(spec.curve, spec.default_params.delta);
    const Point2 p{-0.01, 0.0};
    const auto r = min_boundary_distance(arcs, p);
    double oracle = 1e300;
    for (int k = 0; k <= 1'000'000; ++k)
      oracle = std::min(oracle, norm(spec.curve.position(k * 1e-6) - p));
    CHECK(r.d > 0.0);
    CHECK(r.d == Catch::Approx(oracle).margin(1e-8));
  }
}

TEST_CASE("unit-density potential reproduces the interior Gauss identity") {
  const auto sol = unit_density_solution(2, 128, 3.10e-08);
  for (const Point2 p : {Point2{0.3, 0.0}, Point2{0.8, 0.6}, Point2{0.5, -0.5}}) {
    const auto ev = evaluate_potential(sol, p);
    CHECK(ev.value == Catch::Approx(-2.0 * pi).margin(1e-6));
    CHECK(ev.d > 0.0);
  }

  SECTION("deviation from -2 pi decreases with m") {
    const auto coarse = unit_density_solution(2, 64, 3.10e-08);
    const auto fine = unit_density_solution(2, 256, 3.10e-08);
    for (const Point2 p : {Point2{0.3, 0.0}, Point2{0.8, 0.6}}) {
      const double ec = std::abs(evaluate_potential(coarse, p).value + 2.0 * pi);
      const double ef = std::abs(evaluate_potential(fine, p).value + 2.0 * pi);
      CHECK(ef <= ec);
    }
  }
}

TEST_CASE("potential error decays with distance and with m") {
  const auto spec = example_problem(2);
  const KernelSet kset(split_boundary(spec.curve, spec.default_params.delta));
  auto run = [&](int m) {
    const auto rule = lobatto_rule(m);
    const SolverConfig config{m, spec.default_params.c, spec.default_params.epsilon};
    BoundaryData g;
    for (int i = 1; i <= 3; ++i) {
      const Arc arc = kset.arcs.arc(i);
      const auto u = spec.reference_u;
      g[static_cast<std::size_t>(i - 1)] = [arc, u](double s) { return u(arc.position(s)); };
    }
    return solve(assemble(kset, rule, config, g));
  };
  const auto s64 = run(64);
  const auto s256 = run(256);
  auto err = [&](const NystromSolution& sol, Point2 p) {
    return std::abs(reference_solution(spec, p) - evaluate_potential(sol, p).value);
  };

  SECTION("near point is worse than far point at fixed m") {
    CHECK(err(s64, {0.01, 0.0}) > err(s64, {0.9, 0.8}));
    CHECK(err(s256, {0.01, 0.0}) > err(s256, {0.9, 0.8}));
  }
  SECTION("err(4m) <= err(m) at the built-in evaluation points") {
    for (const Point2 p : spec.eval_points) CHECK(err(s256, p) <= err(s64, p));
  }
  SECTION("boundary points are rejected") {
    CHECK_THROWS_AS(evaluate_potential(s64, spec.curve.position(0.2)), std::domain_error);
  }
}
