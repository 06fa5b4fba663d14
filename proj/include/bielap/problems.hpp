#pragma once

// Built-in test problems: five corner domains with their boundary
// parametrizations, reference harmonic solutions where available, and the
// solver parameters used for the reference runs.

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bielap/geometry.hpp"

namespace bielap {

struct ProblemSpec {
  int id = 0;
  BoundaryCurve curve;
  std::optional<double> family_angle;         // interior angle for the sweep families (4, 5)
  std::function<double(Point2)> reference_u;  // empty for the sweep families
  struct Params {
    double delta = 1e-6;
    double c = 1.0;
    double epsilon = 1e-6;
  } default_params;
  std::vector<Point2> eval_points;

  bool has_reference() const { return static_cast<bool>(reference_u); }
};

namespace detail {

constexpr double pi = std::numbers::pi;

// sin(pi t) * (cos(w (t - tau)), sin(w (t - tau))): petal families (ids 3, 4).
inline BoundaryCurve petal_curve(double w, double tau) {
  BoundaryCurve c;
  c.position = [w, tau](double t) -> Point2 {
    const double r = std::sin(pi * t), u = w * (t - tau);
    return {r * std::cos(u), r * std::sin(u)};
  };
  c.first_derivative = [w, tau](double t) -> Point2 {
    const double r = std::sin(pi * t), dr = pi * std::cos(pi * t), u = w * (t - tau);
    return {dr * std::cos(u) - r * w * std::sin(u), dr * std::sin(u) + r * w * std::cos(u)};
  };
  c.second_derivative = [w, tau](double t) -> Point2 {
    const double r = std::sin(pi * t), dr = pi * std::cos(pi * t);
    const double ddr = -pi * pi * std::sin(pi * t), u = w * (t - tau);
    const double cu = std::cos(u), su = std::sin(u);
    return {ddr * cu - 2.0 * dr * w * su - r * w * w * cu,
            ddr * su + 2.0 * dr * w * cu - r * w * w * su};
  };
  return c;
}

}  // namespace detail

/// The problem registry. Examples 1-3 are fixed domains with reference
/// harmonic solutions; 4 and 5 are angle-parametrized families used for
/// condition-number sweeps (angle required, no reference).
inline ProblemSpec example_problem(int id, std::optional<double> angle = std::nullopt) {
  using detail::pi;
  ProblemSpec spec;
  spec.id = id;
  switch (id) {
    case 1: {
      if (angle) throw std::invalid_argument("example_problem: example 1 takes no angle");
      spec.curve.position = [](double t) -> Point2 {
        return {(2.0 / 3.0) * std::sin(3.0 * pi * t), std::sin(2.0 * pi * t)};
      };
      spec.curve.first_derivative = [](double t) -> Point2 {
        return {2.0 * pi * std::cos(3.0 * pi * t), 2.0 * pi * std::cos(2.0 * pi * t)};
      };
      spec.curve.second_derivative = [](double t) -> Point2 {
        return {-6.0 * pi * pi * std::sin(3.0 * pi * t), -4.0 * pi * pi * std::sin(2.0 * pi * t)};
      };
      // r^{2/3} cos(2 theta / 3); the branch cut lies on the positive x-axis,
      // the exterior bisector of the reentrant corner.
      spec.reference_u = [](Point2 p) {
        const double r = std::hypot(p.x, p.y);
        double th = std::atan2(p.y, p.x);
        if (th < 0.0) th += 2.0 * pi;
        return std::pow(r, 2.0 / 3.0) * std::cos(2.0 * th / 3.0);
      };
      spec.default_params = {5.16e-08, 50.0, 1e-3};
      spec.eval_points = {{-0.01, 0.0}, {0.0, 0.1}, {-0.4, 0.4}, {0.4, 0.8}};
      break;
    }
    case 2: {
      if (angle) throw std::invalid_argument("example_problem: example 2 takes no angle");
      const double cx = 2.0 / std::sqrt(3.0);
      spec.curve.position = [cx](double t) -> Point2 {
        return {cx * std::sin(pi * t), -std::sin(2.0 * pi * t)};
      };
      spec.curve.first_derivative = [cx](double t) -> Point2 {
        return {cx * pi * std::cos(pi * t), -2.0 * pi * std::cos(2.0 * pi * t)};
      };
      spec.curve.second_derivative = [cx](double t) -> Point2 {
        return {-cx * pi * pi * std::sin(pi * t), 4.0 * pi * pi * std::sin(2.0 * pi * t)};
      };
      // r^{3/2} cos(3 theta / 2) with theta in (-pi, pi]: the cut lies on the
      // negative x-axis, outside the drop.
      spec.reference_u = [](Point2 p) {
        const double r = std::hypot(p.x, p.y);
        const double th = std::atan2(p.y, p.x);
        return std::pow(r, 1.5) * std::cos(1.5 * th);
      };
      spec.default_params = {3.10e-08, 1.0, 1e-6};
      spec.eval_points = {{0.01, 0.0}, {0.1, 0.0}, {0.8, 0.6}, {0.9, 0.8}};
      break;
    }
    case 3: {
      if (angle) throw std::invalid_argument("example_problem: example 3 takes no angle");
      const double chi = 0.86;
      spec.curve = detail::petal_curve((1.0 - chi) * pi, 0.0);
      spec.reference_u = [](Point2 p) { return std::sin(p.x) * std::cosh(p.y); };
      spec.default_params = {1.52e-08, 500.0, 1e-1};
      spec.eval_points = {{0.05, 0.01}, {0.2, 0.025}, {0.4, 0.05}, {0.8, 0.15}};
      break;
    }
    case 4: {
      if (!angle) throw std::invalid_argument("example_problem: example 4 requires an angle");
      const double phi = *angle;
      if (!(phi >= 0.1 * pi && phi <= 1.9 * pi))
        throw std::invalid_argument("example_problem: example 4 angle outside [0.1 pi, 1.9 pi]");
      if (std::abs(phi - pi) < 1e-9 * pi)
        throw std::invalid_argument("example_problem: example 4 angle too close to pi (no corner)");
      spec.family_angle = phi;
      spec.curve = detail::petal_curve(phi, 0.5);
      spec.default_params = {1e-6, 200.0, 1e-1};
      break;
    }
    case 5: {
      if (!angle) throw std::invalid_argument("example_problem: example 5 requires an angle");
      const double phi = *angle;
      if (!(phi > pi && phi < 2.0 * pi))
        throw std::invalid_argument("example_problem: example 5 angle outside (pi, 2 pi)");
      spec.family_angle = phi;
      const double T = std::tan(0.5 * phi);
      const double w = (1.0 + phi / pi) * pi;
      spec.curve.position = [T, w](double t) -> Point2 {
        return {T * std::cos(w * t) - std::sin(w * t) - T,
                T * std::sin(w * t) + std::cos(w * t) - std::cos(pi * t)};
      };
      spec.curve.first_derivative = [T, w](double t) -> Point2 {
        return {-T * w * std::sin(w * t) - w * std::cos(w * t),
                T * w * std::cos(w * t) - w * std::sin(w * t) + pi * std::sin(pi * t)};
      };
      spec.curve.second_derivative = [T, w](double t) -> Point2 {
        return {-T * w * w * std::cos(w * t) + w * w * std::sin(w * t),
                -T * w * w * std::sin(w * t) - w * w * std::cos(w * t) + pi * pi * std::cos(pi * t)};
      };
      spec.default_params = {1e-6, 200.0, 1e-1};
      break;
    }
    default:
      throw std::invalid_argument("example_problem: id must be 1..5");
  }
  return spec;
}

inline double reference_solution(const ProblemSpec& spec, Point2 p) {
  if (!spec.has_reference())
    throw std::invalid_argument("reference_solution: example " + std::to_string(spec.id) +
                                " has no reference solution");
  return spec.reference_u(p);
}

}  // namespace bielap
