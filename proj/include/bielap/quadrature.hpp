#pragma once

// Lobatto rule on [0,1] whose interior nodes are the zeros of the degree-m
// orthogonal polynomial for the Jacobi weight x(1-x). Nodes come from the
// symmetric tridiagonal recurrence matrix and are polished by Newton steps;
// interior weights are the Gauss-Jacobi weights divided by x(1-x).

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace bielap {

class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureRule {
  int m = 0;                    // number of interior nodes
  std::vector<double> nodes;    // m+2 values, nodes[0] = 0, nodes[m+1] = 1
  std::vector<double> weights;  // m+2 positive values
};

namespace detail {

// Monic three-term recurrence for Jacobi(1,1) shifted to [0,1]:
//   p_{k+1}(x) = (x - 1/2) p_k(x) - B_k p_{k-1}(x)
inline double jacobi11_recurrence_b(int k) {
  return 0.25 * (static_cast<double>(k) * (k + 2)) / ((2.0 * k + 1) * (2.0 * k + 3));
}

// Orthonormal values p~_0 .. p~_m at x, plus the derivative of p~_m.
// Returns sum_{j=0}^{m-1} p~_j(x)^2 through *sum_sq when requested.
inline void jacobi11_orthonormal(int m, double x, double& pm, double& dpm, double* sum_sq) {
  constexpr double mu0 = 1.0 / 6.0;  // integral of x(1-x) over [0,1]
  double p_prev = 0.0, dp_prev = 0.0;
  double p = 1.0 / std::sqrt(mu0), dp = 0.0;
  double acc = p * p;
  double sb_prev = 0.0;
  for (int k = 0; k < m; ++k) {
    const double sb = std::sqrt(jacobi11_recurrence_b(k + 1));
    const double p_next = ((x - 0.5) * p - sb_prev * p_prev) / sb;
    const double dp_next = (p + (x - 0.5) * dp - sb_prev * dp_prev) / sb;
    p_prev = p;
    dp_prev = dp;
    p = p_next;
    dp = dp_next;
    sb_prev = sb;
    if (k < m - 1) acc += p * p;
  }
  pm = p;
  dpm = dp;
  if (sum_sq) *sum_sq = acc;
}

}  // namespace detail

/// Zeros of the degree-m orthogonal polynomial for the weight x(1-x) on
/// [0,1], strictly increasing, accurate to ~1e-14.
inline std::vector<double> jacobi11_interior_nodes(int m) {
  if (m < 1) throw std::invalid_argument("jacobi11_interior_nodes: m must be >= 1");
  if (m > (1 << 16)) throw std::invalid_argument("jacobi11_interior_nodes: m too large");

  Eigen::VectorXd diag = Eigen::VectorXd::Constant(m, 0.5);
  Eigen::VectorXd sub(std::max(m - 1, 1));
  for (int k = 1; k < m; ++k) sub[k - 1] = std::sqrt(detail::jacobi11_recurrence_b(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(std::max(m - 1, 0)), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numerical_error("jacobi11_interior_nodes: tridiagonal eigensolve failed");

  std::vector<double> x(es.eigenvalues().data(), es.eigenvalues().data() + m);
  for (int k = 0; k < m; ++k) {
    double xi = x[static_cast<std::size_t>(k)];
    for (int it = 0; it < 50; ++it) {
      double p, dp;
      detail::jacobi11_orthonormal(m, xi, p, dp, nullptr);
      if (dp == 0.0) break;
      const double step = p / dp;
      xi -= step;
      if (std::abs(step) <= 4.0 * std::abs(xi) * std::numeric_limits<double>::epsilon()) break;
    }
    if (!(xi > 0.0 && xi < 1.0))
      throw numerical_error("jacobi11_interior_nodes: node " + std::to_string(k) +
                            " escaped (0,1)");
    x[static_cast<std::size_t>(k)] = xi;
  }
  std::sort(x.begin(), x.end());
  // The weight is symmetric about 1/2; enforce the node symmetry exactly.
  for (int k = 0; k < m / 2; ++k) {
    const double v = 0.5 * (x[static_cast<std::size_t>(k)] + 1.0 - x[static_cast<std::size_t>(m - 1 - k)]);
    x[static_cast<std::size_t>(k)] = v;
    x[static_cast<std::size_t>(m - 1 - k)] = 1.0 - v;
  }
  if (m % 2 == 1) x[static_cast<std::size_t>(m / 2)] = 0.5;
  for (int k = 0; k + 1 < m; ++k)
    if (!(x[static_cast<std::size_t>(k)] < x[static_cast<std::size_t>(k + 1)]))
      throw numerical_error("jacobi11_interior_nodes: nodes not strictly increasing at index " +
                            std::to_string(k));
  return x;
}

/// The (m+2)-point Lobatto rule on [0,1] for the plain Lebesgue measure.
inline QuadratureRule lobatto_rule(int m) {
  QuadratureRule rule;
  rule.m = m;
  const std::vector<double> interior = jacobi11_interior_nodes(m);

  rule.nodes.resize(static_cast<std::size_t>(m) + 2);
  rule.weights.resize(static_cast<std::size_t>(m) + 2);
  rule.nodes.front() = 0.0;
  rule.nodes.back() = 1.0;
  const double endpoint_weight = 1.0 / (static_cast<double>(m + 1) * (m + 2));
  rule.weights.front() = endpoint_weight;
  rule.weights.back() = endpoint_weight;

  for (int k = 0; k < m; ++k) {
    const double xk = interior[static_cast<std::size_t>(k)];
    double pm, dpm, sum_sq;
    detail::jacobi11_orthonormal(m, xk, pm, dpm, &sum_sq);
    const double gauss_jacobi_weight = 1.0 / sum_sq;
    rule.nodes[static_cast<std::size_t>(k) + 1] = xk;
    rule.weights[static_cast<std::size_t>(k) + 1] = gauss_jacobi_weight / (xk * (1.0 - xk));
  }
  for (int k = 1; k <= m / 2; ++k) {
    const double w = 0.5 * (rule.weights[static_cast<std::size_t>(k)] +
                            rule.weights[static_cast<std::size_t>(m + 1 - k)]);
    rule.weights[static_cast<std::size_t>(k)] = w;
    rule.weights[static_cast<std::size_t>(m + 1 - k)] = w;
  }

  double sum = 0.0;
  for (double w : rule.weights) {
    if (!(w > 0.0)) throw numerical_error("lobatto_rule: nonpositive weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-13)
    throw numerical_error("lobatto_rule: weights sum to " + std::to_string(sum));
  return rule;
}

/// Sum lambda_k f(x_k). f must be finite at every node, endpoints included.
inline double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double acc = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double v = f(rule.nodes[k]);
    if (!std::isfinite(v))
      throw numerical_error("integrate: integrand not finite at node " + std::to_string(k) +
                            " (x = " + std::to_string(rule.nodes[k]) + ")");
    acc += rule.weights[k] * v;
  }
  return acc;
}

}  // namespace bielap
