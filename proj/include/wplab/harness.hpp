#pragma once

#include <map>
#include <string>
#include <vector>

#include "wplab/bounds.hpp"
#include "wplab/solvers.hpp"

namespace wplab {

/// One scenario: a domain, a log-weight, exponent lists, a refinement ladder
/// and the set of inequality checks to run. Scenarios are JSON documents;
/// scenarios/README has the schema with an example per check.
struct ScenarioSpec {
  std::string name = "scenario";
  DomainSpec domain = DomainSpec::interval(0.0, 1.0, 0);
  WeightSpec weight;
  std::vector<WeightSpec> weight_sweep;  // sweep only; empty = just `weight`
  std::vector<double> p_list{2.0};
  std::vector<double> alpha_list;
  std::vector<int> resolutions;  // >= 3 entries, strictly increasing
  std::vector<std::string> checks;
  std::map<std::string, std::string> expect;  // check name -> outcome name
  SolverOptions solver;
  double tol_verdict = default_tol_verdict();
  double tol_cond = 1e-8;
};

ScenarioSpec parse_scenario(const std::string& json_text);
ScenarioSpec load_scenario(const std::string& path);
// Throws ConfigError; called by run_scenario as well.
void validate_scenario(const ScenarioSpec& spec);

struct EigenRow {
  std::string problem;  // dirichlet | plate | buckling
  double p = 0.0;       // 0 for the fourth-order problems
  int resolution = 0;
  double lambda = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  double wall_ms = 0.0;  // console diagnostics only, kept out of JSON
};

struct TraceRow {
  std::string name;
  std::vector<double> values;  // coarse to fine, one per resolution
  bool suspected_divergent = false;
};

struct VerdictRow {
  std::string check;  // the scenario check that produced the verdict
  Verdict verdict;
  double p = 0.0;
  bool has_p = false;
  double alpha = 0.0;
  bool has_alpha = false;
  // Context eigenvalues for the CSV row; absent values stay unset.
  double lambda_p = 0.0, lambda_2p = 0.0, gamma = 0.0, lambda_buck = 0.0;
  bool has_lambda_p = false, has_lambda_2p = false, has_gamma = false,
       has_lambda_buck = false;
  std::string expected;  // empty when the scenario pins no expectation
  bool as_expected = true;
};

struct Report {
  std::string schema_version = "1";
  ScenarioSpec scenario;
  std::vector<EigenRow> eigen_table;
  std::vector<TraceRow> traces;
  std::vector<ConditionReport> conditions;
  std::vector<VerdictRow> verdicts;
  std::vector<std::string> notes;

  /// True when every verdict matches its expectation (pinned outcome if
  /// given, otherwise anything but "fail").
  bool all_as_expected() const;
};

Report run_scenario(const ScenarioSpec& spec);

struct SweepResult {
  std::vector<Report> reports;       // cell order: weight x p x alpha
  std::vector<std::string> errors;   // "<cell>: <what>" for failed cells
  bool all_as_expected() const;
};

SweepResult sweep(const ScenarioSpec& spec);

/// Deterministic serialization: no timestamps, every number rounded to 12
/// significant digits so emit/parse round-trips bit-identically.
std::string report_json(const Report& report);
std::string report_csv(const Report& report);
std::string sweep_json(const SweepResult& result);
std::string sweep_csv(const SweepResult& result);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace wplab
