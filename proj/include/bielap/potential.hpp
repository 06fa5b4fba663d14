#pragma once

// Evaluation of the approximate double-layer potential at interior points,
// and distances from a point to the three boundary arcs.

#include <array>
#include <cmath>
#include <stdexcept>

#include "bielap/system.hpp"

namespace bielap {

struct DistanceResult {
  double d = 0.0;                          // min over the three arcs
  std::array<double, 3> per_arc{};
};

struct PotentialEvaluation {
  Point2 point;
  double value = 0.0;
  double d = 0.0;
  std::array<double, 3> per_arc_distances{};
};

namespace detail {

inline double arc_distance(const Arc& arc, Point2 p, int samples = 1024) {
  auto dist = [&](double t) { return norm(arc.position(t) - p); };
  int best = 0;
  double dbest = dist(0.0);
  for (int k = 1; k <= samples; ++k) {
    const double d = dist(static_cast<double>(k) / samples);
    if (d < dbest) {
      dbest = d;
      best = k;
    }
  }
  double lo = std::max(0.0, (best - 1.0) / samples);
  double hi = std::min(1.0, (best + 1.0) / samples);
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = dist(x1), f2 = dist(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = dist(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = dist(x2);
    }
  }
  return std::min({dbest, f1, f2});
}

}  // namespace detail

inline DistanceResult min_boundary_distance(const ArcSystem& arcs, Point2 p) {
  DistanceResult r;
  for (int i = 1; i <= 3; ++i)
    r.per_arc[static_cast<std::size_t>(i - 1)] = detail::arc_distance(arcs.arc(i), p);
  r.d = std::min({r.per_arc[0], r.per_arc[1], r.per_arc[2]});
  return r;
}

inline DistanceResult min_boundary_distance(const KernelSet& kset, Point2 p) {
  return min_boundary_distance(kset.arcs, p);
}

/// u_m(x,y) = sum_i sum_h lambda_h H_i(x,y,x_h) a_{i,h}, where H_i is the
/// double-layer kernel with the target off the boundary, carrying the same
/// per-arc orientation sign as K^{i,j}.
inline PotentialEvaluation evaluate_potential(const NystromSolution& sol, Point2 p) {
  PotentialEvaluation ev;
  ev.point = p;
  const DistanceResult dr = min_boundary_distance(sol.kset, p);
  ev.d = dr.d;
  ev.per_arc_distances = dr.per_arc;
  if (!(ev.d > 1e-8)) throw std::domain_error("evaluate_potential: point lies on the boundary");

  const int n = static_cast<int>(sol.rule.nodes.size());
  double value = 0.0;
  for (int i = 1; i <= 3; ++i) {
    const auto& pos = sol.table.pos[static_cast<std::size_t>(i - 1)];
    const auto& d1 = sol.table.d1[static_cast<std::size_t>(i - 1)];
    const double sign = sol.kset.sign(i);
    for (int h = 0; h < n; ++h) {
      const double dx = p.x - pos[static_cast<std::size_t>(h)].x;
      const double dy = p.y - pos[static_cast<std::size_t>(h)].y;
      const double H = sign * (d1[static_cast<std::size_t>(h)].y * dx - d1[static_cast<std::size_t>(h)].x * dy) /
                       (dx * dx + dy * dy);
      value += sol.rule.weights[static_cast<std::size_t>(h)] * H * sol.a(i, h);
    }
  }
  ev.value = value;
  return ev;
}

}  // namespace bielap
