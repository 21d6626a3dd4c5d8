// Command-line front end: solve (one eigenproblem), check (one scenario),
// sweep (parameter ranges), convergence (refinement study).
// Exit codes: 0 all pass or expected, 1 unexpected fail, 2 bad configuration.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wplab/harness.hpp"

namespace {

using namespace wplab;

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void deliver(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

EigenResult solve_one(const Grid& grid, const WeightField& w,
                      const std::string& problem, double p,
                      const SolverOptions& opts) {
  if (problem == "plate") return solve_clamped_plate(grid, w, opts);
  if (problem == "buckling") return solve_buckling(grid, w, opts);
  if (problem == "dirichlet") {
    if (std::abs(p - 2.0) < 1e-12) return solve_linear_dirichlet(grid, w, opts);
    return solve_plaplacian_dirichlet(grid, w, p, opts);
  }
  throw ConfigError("problem must be dirichlet|plate|buckling");
}

struct CommonFlags {
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double tol = -1.0;  // < 0: keep the scenario's solver tolerance
};

void add_common(CLI::App* cmd, CommonFlags& fl) {
  cmd->add_option("--format", fl.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", fl.out, "Write output to this file");
  cmd->add_option("--seed", fl.seed, "Restart-field seed override")
      ->each([&fl](const std::string&) { fl.seed_set = true; });
  cmd->add_option("--tol", fl.tol, "Eigenvalue tolerance override");
}

void apply_common(ScenarioSpec& s, const CommonFlags& fl) {
  if (fl.seed_set) s.solver.seed = fl.seed;
  if (fl.tol > 0.0) s.solver.tol = fl.tol;
}

int cmd_solve(const std::string& path, const CommonFlags& fl,
              const std::string& problem, double p, int resolution) {
  ScenarioSpec s = load_scenario(path);
  apply_common(s, fl);
  if (s.resolutions.empty() && resolution <= 0)
    throw ConfigError("no resolution: give --resolution or a scenario list");
  const int n = resolution > 0 ? resolution : s.resolutions.back();
  const Grid grid(s.domain.with_resolution(n));
  const WeightField w = weight_tables(s.weight, grid);
  const EigenResult r = solve_one(grid, w, problem, p, s.solver);

  if (fl.format == "csv") {
    std::string text = "problem,p,resolution,lambda,residual,iterations,converged\n";
    text += problem + ',' + (problem == "dirichlet" ? fmt12(p) : "") + ',' +
            std::to_string(n) + ',' + fmt12(r.lambda) + ',' +
            fmt12(r.residual) + ',' + std::to_string(r.iterations) + ',' +
            (r.converged ? "true" : "false") + '\n';
    deliver(text, fl.out);
  } else {
    std::string text = "{\n  \"problem\": \"" + problem + "\",\n";
    if (problem == "dirichlet") text += "  \"p\": " + fmt12(p) + ",\n";
    text += "  \"resolution\": " + std::to_string(n) + ",\n";
    text += "  \"lambda\": " + fmt12(r.lambda) + ",\n";
    text += "  \"residual\": " + fmt12(r.residual) + ",\n";
    text += "  \"iterations\": " + std::to_string(r.iterations) + ",\n";
    text += std::string("  \"converged\": ") +
            (r.converged ? "true" : "false") + "\n}\n";
    deliver(text, fl.out);
  }
  return r.converged ? 0 : 1;
}

int cmd_check(const std::string& path, const CommonFlags& fl) {
  ScenarioSpec s = load_scenario(path);
  apply_common(s, fl);
  const Report rep = run_scenario(s);
  for (const EigenRow& e : rep.eigen_table) {
    std::fprintf(stderr, "%-10s p=%-4g n=%-5d lambda=%.10g  (%.1f ms)\n",
                 e.problem.c_str(), e.p, e.resolution, e.lambda, e.wall_ms);
  }
  deliver(fl.format == "csv" ? report_csv(rep) : report_json(rep), fl.out);
  return rep.all_as_expected() ? 0 : 1;
}

int cmd_sweep(const std::string& path, const CommonFlags& fl) {
  ScenarioSpec s = load_scenario(path);
  apply_common(s, fl);
  const SweepResult res = sweep(s);
  for (const std::string& e : res.errors)
    std::fprintf(stderr, "cell error: %s\n", e.c_str());
  deliver(fl.format == "csv" ? sweep_csv(res) : sweep_json(res), fl.out);
  return res.all_as_expected() ? 0 : 1;
}

int cmd_convergence(const std::string& path, const CommonFlags& fl,
                    const std::string& problem, double p) {
  ScenarioSpec s = load_scenario(path);
  apply_common(s, fl);
  if (s.resolutions.size() < 3)
    throw ConfigError("a convergence study needs at least 3 resolutions");

  std::vector<double> lambdas;
  for (int n : s.resolutions) {
    const Grid grid(s.domain.with_resolution(n));
    const WeightField w = weight_tables(s.weight, grid);
    lambdas.push_back(solve_one(grid, w, problem, p, s.solver).lambda);
  }

  std::string text = "resolution,lambda,richardson_ratio\n";
  for (size_t k = 0; k < lambdas.size(); ++k) {
    std::string ratio;
    if (k >= 2) {
      const double num = lambdas[k - 1] - lambdas[k - 2];
      const double den = lambdas[k] - lambdas[k - 1];
      if (den != 0.0) ratio = fmt12(num / den);
    }
    text += std::to_string(s.resolutions[k]) + ',' + fmt12(lambdas[k]) + ',' +
            ratio + '\n';
  }
  if (fl.format == "json") {
    std::string j = "{\n  \"resolutions\": [";
    for (size_t k = 0; k < lambdas.size(); ++k)
      j += (k ? ", " : "") + std::to_string(s.resolutions[k]);
    j += "],\n  \"lambda\": [";
    for (size_t k = 0; k < lambdas.size(); ++k)
      j += (k ? ", " : "") + fmt12(lambdas[k]);
    j += "]\n}\n";
    deliver(j, fl.out);
  } else {
    deliver(text, fl.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted spectral laboratory: eigenvalues of the weighted "
               "p-Laplacian, clamped plate and buckling problems, and "
               "verdicts on the two-sided inequalities relating them"};
  app.require_subcommand(1);

  std::string scenario_path, problem = "dirichlet";
  double p = 2.0;
  int resolution = 0;
  CommonFlags fl_solve, fl_check, fl_sweep, fl_conv;

  CLI::App* solve = app.add_subcommand("solve", "Solve one eigenproblem");
  solve->add_option("scenario", scenario_path, "Scenario JSON")->required();
  solve->add_option("--problem", problem, "dirichlet|plate|buckling");
  solve->add_option("--p", p, "Exponent for the Dirichlet problem");
  solve->add_option("--resolution", resolution, "Nodes per axis");
  add_common(solve, fl_solve);

  CLI::App* check = app.add_subcommand("check", "Run one scenario");
  check->add_option("scenario", scenario_path, "Scenario JSON")->required();
  add_common(check, fl_check);

  CLI::App* sw = app.add_subcommand("sweep", "Run parameter ranges");
  sw->add_option("scenario", scenario_path, "Scenario JSON")->required();
  add_common(sw, fl_sweep);

  CLI::App* conv =
      app.add_subcommand("convergence", "Eigenvalue refinement study");
  conv->add_option("scenario", scenario_path, "Scenario JSON")->required();
  conv->add_option("--problem", problem, "dirichlet|plate|buckling");
  conv->add_option("--p", p, "Exponent for the Dirichlet problem");
  add_common(conv, fl_conv);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return cmd_solve(scenario_path, fl_solve, problem, p, resolution);
    if (check->parsed()) return cmd_check(scenario_path, fl_check);
    if (sw->parsed()) return cmd_sweep(scenario_path, fl_sweep);
    return cmd_convergence(scenario_path, fl_conv, problem, p);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
