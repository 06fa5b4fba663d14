#pragma once

// Planar boundary curves with a single corner at parameter t = 0, and the
// splitting of such a curve into three smooth arcs: two short arms leaving
// the corner and one connecting section.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bielap {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double c, Point2 p) { return {c * p.x, c * p.y}; }
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline Point2 normalized(Point2 a) {
  const double n = norm(a);
  if (n == 0.0) throw std::invalid_argument("geometry: zero-length tangent");
  return {a.x / n, a.y / n};
}

/// Closed curve over [0,1], counterclockwise, corner at t = 0 (== t = 1).
/// Away from the corner the parametrization must be C^2 with nonvanishing
/// first derivative.
struct BoundaryCurve {
  std::function<Point2(double)> position;
  std::function<Point2(double)> first_derivative;
  std::function<Point2(double)> second_derivative;
};

/// Signed area 1/2 * integral of (x y' - y x') dt, composite Simpson.
/// Positive means counterclockwise.
inline double signed_area(const BoundaryCurve& curve, int intervals = 8192) {
  auto f = [&](double t) {
    const Point2 p = curve.position(t);
    const Point2 d = curve.first_derivative(t);
    return 0.5 * (p.x * d.y - p.y * d.x);
  };
  if (intervals % 2 != 0) ++intervals;
  const double h = 1.0 / intervals;
  double acc = f(0.0) + f(1.0);
  for (int k = 1; k < intervals; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(k * h);
  return acc * h / 3.0;
}

struct CornerData {
  Point2 p0;           // corner location
  double phi = 0.0;    // interior angle, in (0, 2*pi), != pi
  double chi = 0.0;    // phi = (1 - chi) * pi
  Point2 tangent_out;  // unit tangent leaving the corner (t = 0+)
  Point2 tangent_in;   // unit tangent arriving at the corner (t = 1-)
};

/// Interior angle at the corner, measured through the domain. Relies on the
/// counterclockwise orientation: the angle is swept from the outgoing arm to
/// the reversed incoming arm.
inline CornerData corner_angle(const BoundaryCurve& curve) {
  CornerData cd;
  cd.p0 = curve.position(0.0);
  cd.tangent_out = normalized(curve.first_derivative(0.0));
  cd.tangent_in = normalized(curve.first_derivative(1.0));
  const Point2 u = cd.tangent_out;
  const Point2 v = {-cd.tangent_in.x, -cd.tangent_in.y};
  double phi = std::atan2(v.y, v.x) - std::atan2(u.y, u.x);
  const double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (std::abs(phi - std::numbers::pi) < 1e-9)
    throw std::invalid_argument("corner_angle: tangents agree, boundary is smooth at t=0");
  if (phi <= 0.0 || phi >= two_pi)
    throw std::invalid_argument("corner_angle: interior angle outside (0, 2*pi)");
  cd.phi = phi;
  cd.chi = 1.0 - phi / std::numbers::pi;
  return cd;
}

enum class CurveEnd { start, end };

/// Maximum offset of the piece of curve of the given parameter length,
/// measured orthogonally to the one-sided corner tangent of that end.
inline double tangent_deviation(const BoundaryCurve& curve, CurveEnd end, double length,
                                int samples = 256) {
  if (!(length > 0.0) || length > 0.5)
    throw std::invalid_argument("tangent_deviation: length must lie in (0, 1/2]");
  const Point2 p0 = curve.position(0.0);
  const Point2 tau = end == CurveEnd::start ? normalized(curve.first_derivative(0.0))
                                            : -1.0 * normalized(curve.first_derivative(1.0));
  double dev = 0.0;
  for (int k = 1; k <= samples; ++k) {
    const double t = length * k / samples;
    const Point2 p = curve.position(end == CurveEnd::start ? t : 1.0 - t) - p0;
    dev = std::max(dev, std::abs(cross(tau, p)));
  }
  return dev;
}

/// One of the three sections, reparametrized over [0,1] by an affine map of
/// the global parameter. scale < 0 runs the section against the global
/// orientation (used for the arm arriving at the corner).
struct Arc {
  BoundaryCurve curve;
  double offset = 0.0;
  double scale = 1.0;

  Point2 position(double s) const {
    const double t = offset + scale * s;
    // closed curve: t = 1 is the same point as t = 0, and evaluating at 0
    // avoids the parametrization's floating-point closure gap at the corner
    return curve.position(t == 1.0 ? 0.0 : t);
  }
  Point2 derivative(double s) const { return scale * curve.first_derivative(offset + scale * s); }
  Point2 second_derivative(double s) const {
    return (scale * scale) * curve.second_derivative(offset + scale * s);
  }
};

/// The decomposition: arms[0], arms[1] leave the corner (sigma_1 against the
/// global orientation, sigma_2 with it), arms[2] is the connecting section.
struct ArcSystem {
  std::array<Arc, 3> arcs;
  CornerData corner;
  double sigma1_length = 0.0;  // global-parameter length consumed by Sigma_1
  double sigma2_length = 0.0;  // same for Sigma_2
  double delta = 0.0;          // tangent deviation actually achieved

  const Arc& arc(int i) const { return arcs[static_cast<std::size_t>(i - 1)]; }
};

namespace detail {

inline double largest_length_within(const BoundaryCurve& curve, CurveEnd end, double delta,
                                    int samples) {
  double pass = -1.0, fail = -1.0;
  for (int k = 1; k <= 60; ++k) {
    const double ell = std::ldexp(1.0, -k);
    if (tangent_deviation(curve, end, ell, samples) <= delta) {
      pass = ell;
      fail = k > 1 ? std::ldexp(1.0, -(k - 1)) : 0.5;
      break;
    }
  }
  if (pass < 0.0)
    throw std::invalid_argument("split_boundary: deviation bound not achievable at 2^-60");
  if (fail <= pass) return pass;  // k = 1 already passed; do not search past 1/2
  // Bisect keeping the invariant: pass satisfies the bound, fail does not.
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (pass + fail);
    if (tangent_deviation(curve, end, mid, samples) <= delta)
      pass = mid;
    else
      fail = mid;
  }
  return pass;
}

}  // namespace detail

/// Split the boundary into Sigma_1, Sigma_2, Sigma_3 such that the two arms
/// deviate from their corner tangents by at most delta. Each arm takes the
/// largest parameter length on a geometric grid, refined by bisection.
inline ArcSystem split_boundary(const BoundaryCurve& curve, double delta, int samples = 256) {
  if (!(delta > 0.0)) throw std::invalid_argument("split_boundary: delta must be positive");
  const Point2 gap = curve.position(0.0) - curve.position(1.0);
  if (norm(gap) > 1e-9)
    throw std::invalid_argument("split_boundary: curve is not closed");
  if (signed_area(curve) <= 0.0)
    throw std::invalid_argument("split_boundary: curve must be counterclockwise");
  for (int k = 0; k <= 256; ++k)
    if (!(norm(curve.first_derivative(k / 256.0)) > 0.0))
      throw std::invalid_argument("split_boundary: parametrization is singular at t = " +
                                  std::to_string(k / 256.0));

  ArcSystem sys;
  sys.corner = corner_angle(curve);
  const double a = detail::largest_length_within(curve, CurveEnd::end, delta, samples);
  const double b = detail::largest_length_within(curve, CurveEnd::start, delta, samples);
  if (a + b >= 1.0)
    throw std::invalid_argument("split_boundary: delta leaves no room for the connecting arc");
  sys.sigma1_length = a;
  sys.sigma2_length = b;
  sys.delta = std::max(tangent_deviation(curve, CurveEnd::end, a, samples),
                       tangent_deviation(curve, CurveEnd::start, b, samples));
  sys.arcs[0] = Arc{curve, 1.0, -a};           // sigma_1(s) = curve(1 - a s)
  sys.arcs[1] = Arc{curve, 0.0, b};            // sigma_2(s) = curve(b s)
  sys.arcs[2] = Arc{curve, b, 1.0 - a - b};    // sigma_3(s) = curve(b + s (1-a-b))
  return sys;
}

}  // namespace bielap
