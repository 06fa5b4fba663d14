#pragma once

// Double-layer kernels on the split boundary: the parametrized kernels
// K^{i,j}(t,s) with their curvature diagonal, the Mellin wedge kernel
// L(t,s), the compact remainders M^{i,j} = K^{i,j} - L near the corner, and
// the interior-angle function.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bielap/geometry.hpp"
#include "bielap/quadrature.hpp"

namespace bielap {

/// Wedge (Mellin) kernel: -s sin(chi pi) / (s^2 + 2 t s cos(chi pi) + t^2).
inline double kernel_L(double chi, double t, double s) {
  if (t == 0.0 && s == 0.0) throw std::domain_error("kernel_L: undefined at (0,0)");
  if (s == 0.0) return 0.0;
  const double theta = chi * std::numbers::pi;
  return -s * std::sin(theta) / (s * s + 2.0 * t * s * std::cos(theta) + t * t);
}

/// Interior angle along arc i: (1-chi) pi at the corner node of the two
/// arms, pi everywhere else.
inline double omega_bar(double chi, int i, double s) {
  if ((i == 1 || i == 2) && s == 0.0) return (1.0 - chi) * std::numbers::pi;
  return std::numbers::pi;
}

/// Raw parametrized double-layer kernel between a target point arc_i(s) and
/// a source point arc_j(t), j-side parametrization assumed counterclockwise.
inline double double_layer_kernel(const Arc& target, double s, const Arc& source, double t) {
  const Point2 p = target.position(s);
  const Point2 q = source.position(t);
  const Point2 dq = source.derivative(t);
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return (dq.y * dx - dq.x * dy) / (dx * dx + dy * dy);
}

/// Diagonal (coincident-point) limit: half the signed curvature density.
inline double curvature_kernel(const Arc& arc, double t) {
  const Point2 d1 = arc.derivative(t);
  const Point2 d2 = arc.second_derivative(t);
  return 0.5 * (d1.y * d2.x - d1.x * d2.y) / (d1.x * d1.x + d1.y * d1.y);
}

namespace detail {

// Composite Lobatto integration over [0,1] with geometric grading toward
// both endpoints, for validating kernel identities against fine quadrature.
template <typename F>
double graded_integral(const QuadratureRule& panel_rule, const F& f, int uniform_panels = 64,
                       int graded_levels = 46) {
  double acc = 0.0;
  auto add_panel = [&](double a, double b) {
    const double len = b - a;
    for (std::size_t k = 0; k < panel_rule.nodes.size(); ++k)
      acc += len * panel_rule.weights[k] * f(a + len * panel_rule.nodes[k]);
  };
  const double inner = 1.0 / uniform_panels;
  double lo = std::ldexp(inner, -graded_levels);
  add_panel(0.0, lo);
  for (int k = 0; k < graded_levels; ++k, lo *= 2.0) add_panel(lo, 2.0 * lo);
  for (int k = 1; k < uniform_panels - 1; ++k) add_panel(k * inner, (k + 1) * inner);
  double hi = inner;
  for (int k = 0; k < graded_levels; ++k, hi *= 0.5) add_panel(1.0 - hi, 1.0 - 0.5 * hi);
  add_panel(1.0 - std::ldexp(inner, -graded_levels), 1.0);
  return acc;
}

}  // namespace detail

/// Kernel family bound to one ArcSystem. The per-arc orientation sign makes
/// the raw cross-product formula realize the inner-normal convention; it is
/// validated at construction by the Gauss row-sum identity
///   sum_j int_0^1 K^{i,j}(t,s) dt = -Omega_i(s).
struct KernelSet {
  ArcSystem arcs;
  double chi = 0.0;
  std::array<double, 3> orientation_sign = {-1.0, +1.0, +1.0};

  explicit KernelSet(ArcSystem system) : arcs(std::move(system)), chi(arcs.corner.chi) {
    static constexpr std::array<std::array<double, 3>, 8> candidates = {{
        {-1, 1, 1}, {1, 1, 1}, {-1, -1, -1}, {1, -1, -1},
        {-1, 1, -1}, {1, 1, -1}, {-1, -1, 1}, {1, -1, 1},
    }};
    const QuadratureRule panel = lobatto_rule(14);
    for (const auto& signs : candidates) {
      orientation_sign = signs;
      if (gauss_row_sums_hold(panel)) return;
    }
    throw numerical_error("KernelSet: no orientation sign assignment satisfies the Gauss identity");
  }

  double sign(int j) const { return orientation_sign[static_cast<std::size_t>(j - 1)]; }

 private:
  bool gauss_row_sums_hold(const QuadratureRule& panel) const {
    for (int i = 1; i <= 3; ++i) {
      for (double s : {0.3, 0.6, 0.9}) {
        double total = 0.0;
        for (int j = 1; j <= 3; ++j) {
          total += detail::graded_integral(panel, [&](double t) {
            if (i == j && std::abs(t - s) < 1e-13)
              return sign(j) * curvature_kernel(arcs.arc(j), t);
            return sign(j) * double_layer_kernel(arcs.arc(i), s, arcs.arc(j), t);
          });
        }
        if (std::abs(total + omega_bar(chi, i, s)) > 2e-3) return false;
      }
    }
    return true;
  }
};

/// K^{i,j}(t,s). Coincident parameter pairs take the curvature limit of the
/// integration-side arc; the corner pairing (i != j, both arms, t = s = 0)
/// has no finite value and must go through kernel_M instead.
inline double kernel_K(const KernelSet& kset, int i, int j, double t, double s) {
  const Arc& src = kset.arcs.arc(j);
  if (i == j && t == s) return kset.sign(j) * curvature_kernel(src, t);
  // Junction coincidences: sigma_1(1) = sigma_3(1) and sigma_2(1) = sigma_3(0).
  if (i == 1 && j == 3 && s == 1.0 && t == 1.0) return kset.sign(3) * curvature_kernel(src, t);
  if (i == 3 && j == 1 && s == 1.0 && t == 1.0) return kset.sign(1) * curvature_kernel(src, t);
  if (i == 2 && j == 3 && s == 1.0 && t == 0.0) return kset.sign(3) * curvature_kernel(src, t);
  if (i == 3 && j == 2 && s == 0.0 && t == 1.0) return kset.sign(2) * curvature_kernel(src, t);
  if (i != j && i <= 2 && j <= 2 && t == 0.0 && s == 0.0)
    throw std::domain_error("kernel_K: corner pairing (i,j,0,0) is not defined; use kernel_M");
  return kset.sign(j) * double_layer_kernel(kset.arcs.arc(i), s, src, t);
}

/// Compact remainder M^{i,j} = K^{i,j} - L between the two arms. At and
/// near the corner pairing the value is the tangent-wedge limit, zero.
inline double kernel_M(const KernelSet& kset, int i, int j, double t, double s) {
  if (!((i == 1 && j == 2) || (i == 2 && j == 1)))
    throw std::invalid_argument("kernel_M: defined for the arm pairs (1,2) and (2,1) only");
  if (t < 1e-10 && s < 1e-10) return 0.0;
  return kernel_K(kset, i, j, t, s) - kernel_L(kset.chi, t, s);
}

}  // namespace bielap
