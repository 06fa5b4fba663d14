#pragma once

// Assembly of the 3(m+2) x 3(m+2) Nystrom system with the stabilized
// near-corner operator, the dense solve, infinity-norm condition numbers,
// and the natural Nystrom interpolation of the density.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "bielap/kernels.hpp"

namespace bielap {

struct SolverConfig {
  int m = 64;
  double c = 1.0;
  double epsilon = 1e-6;

  /// Below this parameter value the wedge-operator rows are blended with
  /// the closed-form corner limit.
  double corner_threshold() const { return c / std::pow(static_cast<double>(m), 2.0 - 2.0 * epsilon); }

  void validate() const {
    if (m < 1) throw std::invalid_argument("SolverConfig: m must be >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("SolverConfig: c must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0))
      throw std::invalid_argument("SolverConfig: epsilon must lie in (0,1)");
    if (corner_threshold() > 1.0)
      throw std::invalid_argument("SolverConfig: corner threshold c/m^(2-2eps) exceeds 1");
  }
};

/// True when at least one interior node falls inside the blend window.
/// The scheme still runs when this fails, but only the corner row is
/// stabilized then; callers may want to warn.
inline bool corner_window_covers_first_node(const SolverConfig& config, const QuadratureRule& rule) {
  return config.corner_threshold() > rule.nodes[1];
}

enum class WMode { modified, raw };

using BoundaryData = std::array<std::function<double(double)>, 3>;

namespace detail {

// Kernel data cached at the quadrature nodes, so each matrix entry is a few
// arithmetic operations.
struct NodeTable {
  int n = 0;
  std::array<std::vector<Point2>, 3> pos;
  std::array<std::vector<Point2>, 3> d1;
  std::array<std::vector<double>, 3> curv;  // signed curvature-kernel value

  NodeTable() = default;
  NodeTable(const KernelSet& kset, const QuadratureRule& rule) {
    n = static_cast<int>(rule.nodes.size());
    for (int j = 1; j <= 3; ++j) {
      auto& p = pos[static_cast<std::size_t>(j - 1)];
      auto& d = d1[static_cast<std::size_t>(j - 1)];
      auto& cv = curv[static_cast<std::size_t>(j - 1)];
      p.resize(static_cast<std::size_t>(n));
      d.resize(static_cast<std::size_t>(n));
      cv.resize(static_cast<std::size_t>(n));
      const Arc& arc = kset.arcs.arc(j);
      for (int h = 0; h < n; ++h) {
        const double t = rule.nodes[static_cast<std::size_t>(h)];
        p[static_cast<std::size_t>(h)] = arc.position(t);
        d[static_cast<std::size_t>(h)] = arc.derivative(t);
        cv[static_cast<std::size_t>(h)] = kset.sign(j) * curvature_kernel(arc, t);
      }
    }
  }

  // K^{i,j}(x_h, x_l) with the same coincidence conventions as kernel_K.
  double K(const KernelSet& kset, int i, int j, int h, int l) const {
    if (i == j && h == l) return curv[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(h)];
    const bool junction = (i == 1 && j == 3 && l == n - 1 && h == n - 1) ||
                          (i == 3 && j == 1 && l == n - 1 && h == n - 1) ||
                          (i == 2 && j == 3 && l == n - 1 && h == 0) ||
                          (i == 3 && j == 2 && l == 0 && h == n - 1);
    if (junction) return curv[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(h)];
    const Point2 p = pos[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(l)];
    const Point2 q = pos[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(h)];
    const Point2 dq = d1[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(h)];
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return kset.sign(j) * (dq.y * dx - dq.x * dy) / (dx * dx + dy * dy);
  }

  // Same kernel with the target at an arbitrary off-node point.
  double K_at(const KernelSet& kset, Point2 p, int j, int h) const {
    const Point2 q = pos[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(h)];
    const Point2 dq = d1[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(h)];
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return kset.sign(j) * (dq.y * dx - dq.x * dy) / (dx * dx + dy * dy);
  }
};

}  // namespace detail

struct LinearSystem {
  Eigen::MatrixXd matrix;  // row/col index (i-1)(m+2)+l
  Eigen::VectorXd rhs;
  QuadratureRule rule;
  SolverConfig config;
  KernelSet kset;
  BoundaryData g;
  WMode mode = WMode::modified;
  detail::NodeTable table;

  int block_size() const { return static_cast<int>(rule.nodes.size()); }
};

/// Assemble the collocated system (-pi I + W~_m + S_m) a = g at the Lobatto
/// nodes. Rows of the two arms carry the wedge operator; below the corner
/// threshold they are replaced by the linear blend with the corner limit,
/// whose identity coefficient is -chi pi on the own-arc corner unknown.
inline LinearSystem assemble(const KernelSet& kset, const QuadratureRule& rule,
                             const SolverConfig& config, const BoundaryData& g,
                             WMode mode = WMode::modified) {
  config.validate();
  if (config.m != rule.m)
    throw std::invalid_argument("assemble: rule and config disagree on m");
  const int n = static_cast<int>(rule.nodes.size());
  const int N = 3 * n;
  const double chi = kset.chi;
  const double pi = std::numbers::pi;
  const double cp = config.corner_threshold();

  LinearSystem sys{Eigen::MatrixXd::Zero(N, N), Eigen::VectorXd::Zero(N),
                   rule, config, kset, g, mode, detail::NodeTable(kset, rule)};
  const auto& tab = sys.table;
  const auto& x = rule.nodes;
  const auto& lam = rule.weights;

  // lambda_h L(x_h, c') for the blend rows, computed once.
  std::vector<double> wedge_at_cp(static_cast<std::size_t>(n));
  for (int h = 0; h < n; ++h)
    wedge_at_cp[static_cast<std::size_t>(h)] =
        lam[static_cast<std::size_t>(h)] * kernel_L(chi, x[static_cast<std::size_t>(h)], cp);

  for (int i = 1; i <= 3; ++i) {
    for (int l = 0; l < n; ++l) {
      const int row = (i - 1) * n + l;
      const double s = x[static_cast<std::size_t>(l)];
      sys.matrix(row, row) += -pi;
      if (i <= 2) {
        const int j = 3 - i;
        for (int h = 0; h < n; ++h) {
          const double lh = lam[static_cast<std::size_t>(h)];
          sys.matrix(row, (i - 1) * n + h) += lh * tab.K(kset, i, i, h, l);
          const double m_ij = (h == 0 && l == 0)
                                  ? 0.0
                                  : tab.K(kset, i, j, h, l) - kernel_L(chi, x[static_cast<std::size_t>(h)], s);
          sys.matrix(row, (j - 1) * n + h) += lh * m_ij;
          sys.matrix(row, 2 * n + h) += lh * tab.K(kset, i, 3, h, l);
        }
        if (mode == WMode::raw || s >= cp) {
          // W_m row: identity part vanishes for s > 0; the L column is zero
          // along s = 0, including the undefined corner pair L(0,0).
          if (s == 0.0) sys.matrix(row, row) += -chi * pi;
          for (int h = 0; h < n; ++h) {
            if (h == 0 && s == 0.0) continue;
            sys.matrix(row, (j - 1) * n + h) +=
                lam[static_cast<std::size_t>(h)] * kernel_L(chi, x[static_cast<std::size_t>(h)], s);
          }
        } else {
          const double f = 1.0 / cp;
          for (int h = 0; h < n; ++h)
            sys.matrix(row, (j - 1) * n + h) += f * s * wedge_at_cp[static_cast<std::size_t>(h)];
          sys.matrix(row, (i - 1) * n + 0) += f * (cp - s) * (-chi * pi);
        }
      } else {
        for (int j = 1; j <= 3; ++j)
          for (int h = 0; h < n; ++h)
            sys.matrix(row, (j - 1) * n + h) +=
                lam[static_cast<std::size_t>(h)] * tab.K(kset, 3, j, h, l);
      }
      const double gv = g[static_cast<std::size_t>(i - 1)](s);
      if (!std::isfinite(gv))
        throw numerical_error("assemble: boundary datum not finite at arc " + std::to_string(i) +
                              ", node " + std::to_string(l));
      sys.rhs(row) = gv;
    }
  }

  for (int r = 0; r < N; ++r)
    for (int cidx = 0; cidx < N; ++cidx)
      if (!std::isfinite(sys.matrix(r, cidx)))
        throw numerical_error("assemble: non-finite entry at row (" + std::to_string(r / n + 1) +
                              "," + std::to_string(r % n) + "), column (" +
                              std::to_string(cidx / n + 1) + "," + std::to_string(cidx % n) + ")");

  const double scale = 1.0 + sys.rhs.cwiseAbs().maxCoeff();
  if (std::abs(sys.rhs(0) - sys.rhs(n)) > 1e-12 * scale)
    throw std::invalid_argument("assemble: boundary datum discontinuous at the corner");
  return sys;
}

struct NystromSolution {
  Eigen::VectorXd nodal;  // a_{i,l} flattened as (i-1)(m+2)+l
  QuadratureRule rule;
  SolverConfig config;
  KernelSet kset;
  BoundaryData g;
  WMode mode = WMode::modified;
  detail::NodeTable table;
  double residual_inf = 0.0;
  double corner_mismatch = 0.0;
  bool constrained = false;

  double a(int i, int l) const { return nodal((i - 1) * static_cast<int>(rule.nodes.size()) + l); }
};

namespace detail {

// Reduced system identifying a_{2,0} with a_{1,0}; the two corner rows are
// averaged. Old index n maps into column 0.
inline void constrain(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int n,
                      Eigen::MatrixXd& Ar, Eigen::VectorXd& br) {
  const int N = static_cast<int>(A.rows());
  auto col_of = [n](int k) { return k < n ? k : (k == n ? 0 : k - 1); };
  Ar = Eigen::MatrixXd::Zero(N - 1, N - 1);
  br = Eigen::VectorXd::Zero(N - 1);
  for (int r = 0; r < N; ++r) {
    const bool corner_row = (r == 0 || r == n);
    const int rr = corner_row ? 0 : (r < n ? r : r - 1);
    const double w = corner_row ? 0.5 : 1.0;
    for (int k = 0; k < N; ++k) Ar(rr, col_of(k)) += w * A(r, k);
    br(rr) += w * b(r);
  }
}

inline Eigen::PartialPivLU<Eigen::MatrixXd> factor_checked(const Eigen::MatrixXd& A) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const Eigen::VectorXd d = lu.matrixLU().diagonal().cwiseAbs();
  const double dmax = d.maxCoeff();
  int argmin = 0;
  const double dmin = d.minCoeff(&argmin);
  if (!(dmax > 0.0) || dmin / dmax < 1e-14)
    throw numerical_error("linear system numerically singular at pivot " + std::to_string(argmin));
  return lu;
}

}  // namespace detail

/// Dense solve with partial pivoting. In constrained mode the corner
/// unknowns are identified first and the solution is expanded back.
inline NystromSolution solve(const LinearSystem& sys, bool constrained = false) {
  const int n = sys.block_size();
  NystromSolution sol{Eigen::VectorXd(), sys.rule, sys.config, sys.kset, sys.g,
                      sys.mode, sys.table, 0.0, 0.0, constrained};
  if (!constrained) {
    auto lu = detail::factor_checked(sys.matrix);
    sol.nodal = lu.solve(sys.rhs);
  } else {
    Eigen::MatrixXd Ar;
    Eigen::VectorXd br;
    detail::constrain(sys.matrix, sys.rhs, n, Ar, br);
    auto lu = detail::factor_checked(Ar);
    const Eigen::VectorXd ar = lu.solve(br);
    sol.nodal.resize(sys.matrix.rows());
    for (int k = 0; k < sys.matrix.rows(); ++k)
      sol.nodal(k) = k < n ? ar(k) : (k == n ? ar(0) : ar(k - 1));
  }
  sol.residual_inf = (sys.matrix * sol.nodal - sys.rhs).cwiseAbs().maxCoeff();
  sol.corner_mismatch = std::abs(sol.nodal(0) - sol.nodal(n));
  return sol;
}

/// ||A||_inf ||A^-1||_inf with the inverse computed explicitly.
inline double condition_inf(const LinearSystem& sys, bool constrained = false) {
  auto cond_of = [](const Eigen::MatrixXd& A) {
    auto lu = detail::factor_checked(A);
    const Eigen::MatrixXd inv = lu.inverse();
    return A.cwiseAbs().rowwise().sum().maxCoeff() * inv.cwiseAbs().rowwise().sum().maxCoeff();
  };
  if (!constrained) return cond_of(sys.matrix);
  Eigen::MatrixXd Ar;
  Eigen::VectorXd br;
  detail::constrain(sys.matrix, sys.rhs, sys.block_size(), Ar, br);
  return cond_of(Ar);
}

/// Nystrom interpolant psi_i(s) = (-1/pi) [g_i(s) - (W~ psi)_i(s) - (S psi)_i(s)],
/// with both operator applications evaluated from the nodal values exactly
/// as in assembly. Reproduces a_{i,l} at s = x_l.
inline double interpolate_density(const NystromSolution& sol, int i, double s) {
  if (i < 1 || i > 3) throw std::invalid_argument("interpolate_density: arc index must be 1..3");
  const int n = static_cast<int>(sol.rule.nodes.size());
  const auto& x = sol.rule.nodes;
  const auto& lam = sol.rule.weights;
  const auto& tab = sol.table;
  const double chi = sol.kset.chi;
  const double pi = std::numbers::pi;

  int node_index = -1;
  for (int l = 0; l < n; ++l)
    if (x[static_cast<std::size_t>(l)] == s) {
      node_index = l;
      break;
    }
  const Point2 p = sol.kset.arcs.arc(i).position(s);

  auto kernel = [&](int j, int h) {
    if (node_index >= 0) return tab.K(sol.kset, i, j, h, node_index);
    return tab.K_at(sol.kset, p, j, h);
  };

  double s_part = 0.0;
  double w_part = 0.0;
  if (i <= 2) {
    const int j = 3 - i;
    for (int h = 0; h < n; ++h) {
      const double lh = lam[static_cast<std::size_t>(h)];
      s_part += lh * kernel(i, h) * sol.a(i, h);
      const double m_ij = (h == 0 && s == 0.0)
                              ? 0.0
                              : kernel(j, h) - kernel_L(chi, x[static_cast<std::size_t>(h)], s);
      s_part += lh * m_ij * sol.a(j, h);
      s_part += lh * kernel(3, h) * sol.a(3, h);
    }
    const double cp = sol.config.corner_threshold();
    if (sol.mode == WMode::raw || s >= cp) {
      if (s == 0.0) w_part += -chi * pi * sol.a(i, 0);
      for (int h = 0; h < n; ++h) {
        if (h == 0 && s == 0.0) continue;
        w_part += lam[static_cast<std::size_t>(h)] *
                  kernel_L(chi, x[static_cast<std::size_t>(h)], s) * sol.a(j, h);
      }
    } else {
      double wedge_cp = 0.0;
      for (int h = 0; h < n; ++h)
        wedge_cp += lam[static_cast<std::size_t>(h)] *
                    kernel_L(chi, x[static_cast<std::size_t>(h)], cp) * sol.a(j, h);
      w_part = (s * wedge_cp + (cp - s) * (-chi * pi) * sol.a(i, 0)) / cp;
    }
  } else {
    for (int j = 1; j <= 3; ++j)
      for (int h = 0; h < n; ++h)
        s_part += lam[static_cast<std::size_t>(h)] * kernel(j, h) * sol.a(j, h);
  }
  return (-1.0 / pi) * (sol.g[static_cast<std::size_t>(i - 1)](s) - w_part - s_part);
}

/// Discrete sup norm of the interpolated density over the nodes plus a
/// uniform grid on each arc.
inline double density_sup_norm(const NystromSolution& sol, int grid_per_arc = 512) {
  double best = 0.0;
  const int n = static_cast<int>(sol.rule.nodes.size());
  for (int i = 1; i <= 3; ++i) {
    for (int l = 0; l < n; ++l) best = std::max(best, std::abs(sol.a(i, l)));
    for (int k = 0; k <= grid_per_arc; ++k)
      best = std::max(best, std::abs(interpolate_density(sol, i, static_cast<double>(k) / grid_per_arc)));
  }
  return best;
}

}  // namespace bielap
