#pragma once

// Shared test helpers: an adaptive Simpson integrator used as an
// independent oracle, and a few curves that are easy to reason about.

#include <cmath>
#include <functional>
#include <numbers>

#include "bielap/geometry.hpp"

namespace test_support {

inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, m, fa, flm, fm);
  const double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Independent quadrature oracle (method unrelated to the Lobatto rule).
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 48) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), tol, depth);
}

/// Circle of radius R centered at (cx, cy), counterclockwise from angle 0.
inline bielap::BoundaryCurve circle_curve(double R = 1.0, double cx = 0.0, double cy = 0.0) {
  using std::numbers::pi;
  bielap::BoundaryCurve c;
  c.position = [=](double t) -> bielap::Point2 {
    return {cx + R * std::cos(2.0 * pi * t), cy + R * std::sin(2.0 * pi * t)};
  };
  c.first_derivative = [=](double t) -> bielap::Point2 {
    return {-2.0 * pi * R * std::sin(2.0 * pi * t), 2.0 * pi * R * std::cos(2.0 * pi * t)};
  };
  c.second_derivative = [=](double t) -> bielap::Point2 {
    const double w = 2.0 * pi;
    return {-w * w * R * std::cos(w * t), -w * w * R * std::sin(w * t)};
  };
  return c;
}

/// Axis-aligned ellipse, counterclockwise.
inline bielap::BoundaryCurve ellipse_curve(double a, double b) {
  using std::numbers::pi;
  bielap::BoundaryCurve c;
  c.position = [=](double t) -> bielap::Point2 {
    return {a * std::cos(2.0 * pi * t), b * std::sin(2.0 * pi * t)};
  };
  c.first_derivative = [=](double t) -> bielap::Point2 {
    return {-2.0 * pi * a * std::sin(2.0 * pi * t), 2.0 * pi * b * std::cos(2.0 * pi * t)};
  };
  c.second_derivative = [=](double t) -> bielap::Point2 {
    const double w = 2.0 * pi;
    return {-w * w * a * std::cos(w * t), -w * w * b * std::sin(w * t)};
  };
  return c;
}

/// Right-angle corner at the origin with straight arms of parameter length
/// 1/4 along +x (outgoing) and +y (incoming), joined by a circular arc
/// centered at (1,1). Tangent directions are continuous at the junctions.
inline bielap::BoundaryCurve right_angle_corner_curve() {
  using std::numbers::pi;
  bielap::BoundaryCurve c;
  c.position = [](double t) -> bielap::Point2 {
    if (t <= 0.25) return {4.0 * t, 0.0};
    if (t >= 0.75) return {0.0, 4.0 * (1.0 - t)};
    const double th = -0.5 * pi + 3.0 * pi * (t - 0.25);
    return {1.0 + std::cos(th), 1.0 + std::sin(th)};
  };
  c.first_derivative = [](double t) -> bielap::Point2 {
    if (t <= 0.25) return {4.0, 0.0};
    if (t >= 0.75) return {0.0, -4.0};
    const double th = -0.5 * pi + 3.0 * pi * (t - 0.25);
    return {-3.0 * pi * std::sin(th), 3.0 * pi * std::cos(th)};
  };
  c.second_derivative = [](double t) -> bielap::Point2 {
    if (t <= 0.25 || t >= 0.75) return {0.0, 0.0};
    const double th = -0.5 * pi + 3.0 * pi * (t - 0.25);
    const double w = 3.0 * pi;
    return {-w * w * std::cos(th), -w * w * std::sin(th)};
  };
  return c;
}

}  // namespace test_support
