#pragma once

// Experiment harness behind the CLI: runs the full pipeline on a registry
// problem and renders the results as CSV rows and human-readable tables.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bielap/potential.hpp"
#include "bielap/problems.hpp"

namespace bielap {

struct RunOptions {
  int example = 1;
  int m = 64;
  std::optional<double> c;        // default: the example's reference value
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<double> angle;    // examples 4-5 only
  bool constrained = false;
  std::vector<Point2> eval_points;  // when nonempty, replaces the example's points
  std::string dump_rule_path;       // write k,node,weight when nonempty
  std::string dump_system_prefix;   // write <prefix>_A.csv and <prefix>_b.csv
};

struct ExperimentReport {
  int example = 0;
  int m = 0;
  double c = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  bool constrained = false;
  double cond_inf = 0.0;
  double psi_norm_inf = 0.0;
  double corner_mismatch = 0.0;
  double residual_inf = 0.0;
  struct PointError {
    Point2 point;
    double abs_error = 0.0;
    double boundary_distance = 0.0;
  };
  std::vector<PointError> point_errors;
  double junction_mismatch = 0.0;  // diagnostic: arc endpoints against arc 3
  struct {
    double split_s = 0.0, assemble_s = 0.0, solve_s = 0.0, cond_s = 0.0, eval_s = 0.0;
  } wall_time;
  std::vector<std::string> warnings;
};

struct CondSweepRow {
  int example = 0;
  double phi = 0.0;
  int m = 0;
  double cond_inf = 0.0;
};

namespace detail {

inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline void dump_rule_csv(const QuadratureRule& rule, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "k,node,weight\n";
  for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    out << k << ',' << fmt17(rule.nodes[k]) << ',' << fmt17(rule.weights[k]) << '\n';
}

inline void dump_system_csv(const LinearSystem& sys, const std::string& prefix) {
  std::ofstream a(prefix + "_A.csv");
  if (!a) throw std::runtime_error("cannot open " + prefix + "_A.csv");
  a << "row,col,value\n";
  for (int r = 0; r < sys.matrix.rows(); ++r)
    for (int col = 0; col < sys.matrix.cols(); ++col)
      a << r << ',' << col << ',' << fmt17(sys.matrix(r, col)) << '\n';
  std::ofstream b(prefix + "_b.csv");
  if (!b) throw std::runtime_error("cannot open " + prefix + "_b.csv");
  b << "row,value\n";
  for (int r = 0; r < sys.rhs.size(); ++r) b << r << ',' << fmt17(sys.rhs(r)) << '\n';
}

}  // namespace detail

/// Full pipeline: split, kernels, assemble, solve, condition number,
/// interpolated density norm, potential errors at the evaluation points.
inline ExperimentReport run_solve(const RunOptions& opts) {
  const ProblemSpec spec = example_problem(opts.example, opts.angle);
  if (!spec.has_reference())
    throw std::invalid_argument("run_solve: example " + std::to_string(opts.example) +
                                " has no boundary datum; use the condition sweep");
  ExperimentReport rep;
  rep.example = opts.example;
  rep.m = opts.m;
  rep.c = opts.c.value_or(spec.default_params.c);
  rep.epsilon = opts.epsilon.value_or(spec.default_params.epsilon);
  rep.delta = opts.delta.value_or(spec.default_params.delta);
  rep.constrained = opts.constrained;

  auto t0 = std::chrono::steady_clock::now();
  const ArcSystem arcs = split_boundary(spec.curve, rep.delta);
  const KernelSet kset(arcs);
  rep.wall_time.split_s = detail::seconds_since(t0);

  const QuadratureRule rule = lobatto_rule(opts.m);
  const SolverConfig config{opts.m, rep.c, rep.epsilon};
  if (!corner_window_covers_first_node(config, rule))
    rep.warnings.push_back("corner threshold c/m^(2-2eps) lies below the first interior node; "
                           "only the corner row is blended");
  if (!opts.dump_rule_path.empty()) detail::dump_rule_csv(rule, opts.dump_rule_path);

  BoundaryData g;
  for (int i = 1; i <= 3; ++i) {
    const Arc arc = arcs.arc(i);
    const auto& u = spec.reference_u;
    g[static_cast<std::size_t>(i - 1)] = [arc, u](double s) { return u(arc.position(s)); };
  }

  t0 = std::chrono::steady_clock::now();
  const LinearSystem sys = assemble(kset, rule, config, g);
  rep.wall_time.assemble_s = detail::seconds_since(t0);
  if (!opts.dump_system_prefix.empty()) detail::dump_system_csv(sys, opts.dump_system_prefix);

  t0 = std::chrono::steady_clock::now();
  const NystromSolution sol = solve(sys, opts.constrained);
  rep.wall_time.solve_s = detail::seconds_since(t0);
  rep.residual_inf = sol.residual_inf;
  rep.corner_mismatch = sol.corner_mismatch;

  t0 = std::chrono::steady_clock::now();
  rep.cond_inf = condition_inf(sys, opts.constrained);
  rep.wall_time.cond_s = detail::seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  rep.psi_norm_inf = density_sup_norm(sol);
  const int last = static_cast<int>(rule.nodes.size()) - 1;
  rep.junction_mismatch = std::max(std::abs(sol.a(2, last) - sol.a(3, 0)),
                                   std::abs(sol.a(1, last) - sol.a(3, last)));
  const auto& pts = opts.eval_points.empty() ? spec.eval_points : opts.eval_points;
  for (const Point2 p : pts) {
    const PotentialEvaluation ev = evaluate_potential(sol, p);
    ExperimentReport::PointError pe;
    pe.point = p;
    pe.abs_error = std::abs(reference_solution(spec, p) - ev.value);
    pe.boundary_distance = ev.d;
    if (ev.d < 1e-3)
      rep.warnings.push_back("evaluation point (" + std::to_string(p.x) + "," +
                             std::to_string(p.y) + ") lies within 1e-3 of the boundary");
    rep.point_errors.push_back(pe);
  }
  rep.wall_time.eval_s = detail::seconds_since(t0);
  return rep;
}

inline std::vector<ExperimentReport> run_convergence(RunOptions opts, const std::vector<int>& m_list) {
  if (m_list.empty()) throw std::invalid_argument("run_convergence: empty m list");
  std::vector<ExperimentReport> reports;
  reports.reserve(m_list.size());
  for (int m : m_list) {
    opts.m = m;
    reports.push_back(run_solve(opts));
  }
  return reports;
}

struct SweepOptions {
  int example = 4;
  double phi_start = 0.0;
  double phi_end = 0.0;
  int phi_steps = 1;
  int m = 128;
  std::optional<double> c, epsilon, delta;
};

/// One condition number per angle; illegal angles are skipped with a warning.
inline std::vector<CondSweepRow> run_cond_sweep(const SweepOptions& opts,
                                                std::vector<std::string>* warnings = nullptr) {
  if (opts.example != 4 && opts.example != 5)
    throw std::invalid_argument("run_cond_sweep: sweeps are defined for examples 4 and 5");
  if (opts.phi_steps < 1) throw std::invalid_argument("run_cond_sweep: need at least one step");
  // Parameter defaults are per-example, independent of the angle; validate
  // the configuration once so bad m/c combinations fail the whole sweep.
  const ProblemSpec probe =
      example_problem(opts.example, opts.example == 4 ? 0.5 * std::numbers::pi : 1.5 * std::numbers::pi);
  const SolverConfig config{opts.m, opts.c.value_or(probe.default_params.c),
                            opts.epsilon.value_or(probe.default_params.epsilon)};
  config.validate();
  const double delta = opts.delta.value_or(probe.default_params.delta);
  const QuadratureRule rule = lobatto_rule(opts.m);

  std::vector<CondSweepRow> rows;
  for (int k = 0; k < opts.phi_steps; ++k) {
    const double phi = opts.phi_steps == 1
                           ? opts.phi_start
                           : opts.phi_start + (opts.phi_end - opts.phi_start) * k / (opts.phi_steps - 1);
    try {
      const ProblemSpec spec = example_problem(opts.example, phi);
      const KernelSet kset(split_boundary(spec.curve, delta));
      BoundaryData zero{[](double) { return 0.0; }, [](double) { return 0.0; },
                        [](double) { return 0.0; }};
      const LinearSystem sys = assemble(kset, rule, config, zero);
      rows.push_back({opts.example, phi, opts.m, condition_inf(sys)});
    } catch (const std::invalid_argument& e) {
      if (warnings)
        warnings->push_back("phi = " + std::to_string(phi) + " skipped: " + e.what());
    }
  }
  return rows;
}

// ---- CSV rendering -------------------------------------------------------

inline constexpr const char* kSolveCsvHeader =
    "example,m,c,epsilon,delta,cond_inf,psi_norm_inf,corner_mismatch,residual_inf,"
    "eval_x,eval_y,abs_error";

inline void write_csv(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  using detail::fmt17;
  out << kSolveCsvHeader << '\n';
  for (const auto& r : reports) {
    for (const auto& pe : r.point_errors) {
      out << r.example << ',' << r.m << ',' << fmt17(r.c) << ',' << fmt17(r.epsilon) << ','
          << fmt17(r.delta) << ',' << fmt17(r.cond_inf) << ',' << fmt17(r.psi_norm_inf) << ','
          << fmt17(r.corner_mismatch) << ',' << fmt17(r.residual_inf) << ',' << fmt17(pe.point.x)
          << ',' << fmt17(pe.point.y) << ',' << fmt17(pe.abs_error) << '\n';
    }
  }
}

inline void write_csv(std::ostream& out, const std::vector<CondSweepRow>& rows) {
  using detail::fmt17;
  out << "example,phi,m,cond_inf\n";
  for (const auto& r : rows)
    out << r.example << ',' << fmt17(r.phi) << ',' << r.m << ',' << fmt17(r.cond_inf) << '\n';
}

inline void print_report_table(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  for (const auto& r : reports) {
    char line[256];
    std::snprintf(line, sizeof line,
                  "example %d  m=%-5d cond=%-12.6g |psi|=%-.12e mismatch=%.2e resid=%.2e",
                  r.example, r.m, r.cond_inf, r.psi_norm_inf, r.corner_mismatch, r.residual_inf);
    out << line << '\n';
    for (const auto& pe : r.point_errors) {
      std::snprintf(line, sizeof line, "    eps_m(% .6g, % .6g) = %.6e   (d = %.3g)", pe.point.x,
                    pe.point.y, pe.abs_error, pe.boundary_distance);
      out << line << '\n';
    }
    std::snprintf(line, sizeof line,
                  "    junctions=%.2e  time: split %.2fs assemble %.2fs solve %.2fs cond %.2fs eval %.2fs",
                  r.junction_mismatch, r.wall_time.split_s, r.wall_time.assemble_s,
                  r.wall_time.solve_s, r.wall_time.cond_s, r.wall_time.eval_s);
    out << line << '\n';
    for (const auto& w : r.warnings) out << "    warning: " << w << '\n';
  }
}

}  // namespace bielap
