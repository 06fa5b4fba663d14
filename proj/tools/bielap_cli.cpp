// Command-line harness: solve the built-in corner-domain problems, run
// convergence studies over m, and sweep condition numbers over the interior
// angle. Results go to CSV; stdout mirrors a readable table.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "bielap/bielap.hpp"

namespace {

bielap::Point2 parse_point(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("");
    std::size_t used = 0;
    const double x = std::stod(text.substr(0, comma), &used);
    const double y = std::stod(text.substr(comma + 1), &used);
    return {x, y};
  } catch (const std::exception&) {
    throw std::invalid_argument("--eval expects a coordinate pair x,y, got '" + text + "'");
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nystrom solver for the interior Laplace Dirichlet problem on domains with one corner"};
  app.require_subcommand(1);

  int example = 1;
  int m = 64;
  std::string m_list;
  double c = 0.0, epsilon = 0.0, delta = 0.0;
  bool have_c = false, have_eps = false, have_delta = false;
  double phi = 0.0, phi_start = 0.0, phi_end = 0.0;
  int phi_steps = 0;
  bool constrained = false;
  std::vector<std::string> eval_texts;
  std::string dump_rule, dump_system, out_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--example", example, "problem id");
    cmd->add_option("--c", c, "corner modification constant")->each([&](const std::string&) { have_c = true; });
    cmd->add_option("--epsilon", epsilon, "corner modification exponent")->each([&](const std::string&) { have_eps = true; });
    cmd->add_option("--delta", delta, "tangent deviation bound for the split")->each([&](const std::string&) { have_delta = true; });
    cmd->add_option("--dump-rule", dump_rule, "write the quadrature rule to this CSV path");
    cmd->add_option("--out", out_path, "output CSV path");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one problem at a fixed m");
  add_common(solve_cmd);
  solve_cmd->add_option("--m", m, "number of interior quadrature nodes");
  solve_cmd->add_option("--eval", eval_texts, "evaluation point x,y (repeatable; replaces defaults)");
  solve_cmd->add_flag("--constrained", constrained, "identify the two corner unknowns");
  solve_cmd->add_option("--dump-system", dump_system, "write A and b to <prefix>_A.csv, <prefix>_b.csv");

  CLI::App* conv_cmd = app.add_subcommand("convergence", "solve for each m in a list");
  add_common(conv_cmd);
  conv_cmd->add_option("--m-list", m_list, "comma-separated m values")->required();
  conv_cmd->add_option("--eval", eval_texts, "evaluation point x,y (repeatable; replaces defaults)");
  conv_cmd->add_flag("--constrained", constrained, "identify the two corner unknowns");

  CLI::App* sweep_cmd = app.add_subcommand("cond-sweep", "condition number vs interior angle (examples 4, 5)");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--m", m, "number of interior quadrature nodes");
  sweep_cmd->add_option("--phi", phi, "single interior angle (radians)");
  sweep_cmd->add_option("--phi-start", phi_start, "sweep start angle (radians)");
  sweep_cmd->add_option("--phi-end", phi_end, "sweep end angle (radians)");
  sweep_cmd->add_option("--phi-steps", phi_steps, "number of sweep angles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    bielap::RunOptions opts;
    opts.example = example;
    opts.m = m;
    if (have_c) opts.c = c;
    if (have_eps) opts.epsilon = epsilon;
    if (have_delta) opts.delta = delta;
    opts.constrained = constrained;
    opts.dump_rule_path = dump_rule;
    opts.dump_system_prefix = dump_system;
    for (const auto& text : eval_texts) opts.eval_points.push_back(parse_point(text));

    if (solve_cmd->parsed()) {
      const std::vector reports = {bielap::run_solve(opts)};
      auto out = open_out(out_path.empty() ? "solve.csv" : out_path);
      bielap::write_csv(out, reports);
      bielap::print_report_table(std::cout, reports);
    } else if (conv_cmd->parsed()) {
      std::vector<int> ms;
      std::stringstream ss(m_list);
      for (std::string tok; std::getline(ss, tok, ',');)
        if (!tok.empty()) ms.push_back(std::stoi(tok));
      if (ms.empty()) throw std::invalid_argument("convergence: empty --m-list");
      const auto reports = bielap::run_convergence(opts, ms);
      auto out = open_out(out_path.empty() ? "convergence.csv" : out_path);
      bielap::write_csv(out, reports);
      bielap::print_report_table(std::cout, reports);
    } else {
      bielap::SweepOptions sw;
      sw.example = example;
      sw.m = m;
      if (have_c) sw.c = c;
      if (have_eps) sw.epsilon = epsilon;
      if (have_delta) sw.delta = delta;
      if (sweep_cmd->count("--phi")) {
        sw.phi_start = sw.phi_end = phi;
        sw.phi_steps = 1;
      } else {
        if (sweep_cmd->count("--phi-steps") == 0)
          throw std::invalid_argument("cond-sweep: give --phi or --phi-start/--phi-end/--phi-steps");
        sw.phi_start = phi_start;
        sw.phi_end = phi_end;
        sw.phi_steps = phi_steps;
      }
      if (!dump_rule.empty()) {
        const auto rule = bielap::lobatto_rule(m);
        bielap::detail::dump_rule_csv(rule, dump_rule);
      }
      std::vector<std::string> warnings;
      const auto rows = bielap::run_cond_sweep(sw, &warnings);
      auto out = open_out(out_path.empty() ? "cond_sweep.csv" : out_path);
      bielap::write_csv(out, rows);
      for (const auto& r : rows) {
        char line[128];
        std::snprintf(line, sizeof line, "example %d  phi=%-10.6g m=%-5d cond=%.6g", r.example,
                      r.phi, r.m, r.cond_inf);
        std::cout << line << '\n';
      }
      for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
