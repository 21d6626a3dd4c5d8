#include <doctest.h>

#include <json.hpp>

#include "wplab/harness.hpp"

using namespace wplab;

namespace {

std::string small_scenario(const std::string& checks,
                           const std::string& extra = "") {
  return R"({
    "name": "t",
    "domain": {"kind": "interval", "a": 0, "b": 1},
    "weight": {"form": "zero"},
    "p": [2],
    "alpha": [2],
    "resolutions": [17, 33, 65],
    "checks": [)" +
         checks + "]" + extra + "}";
}

}  // namespace

TEST_CASE("scenario parsing") {
  ScenarioSpec s = parse_scenario(small_scenario(
      "\"identities\"", R"(, "seed": 7, "tol_verdict": 0.05)"));
  CHECK(s.name == "t");
  CHECK(s.domain.kind == DomainSpec::Kind::interval);
  CHECK(s.p_list == std::vector<double>{2.0});
  CHECK(s.resolutions == std::vector<int>({17, 33, 65}));
  CHECK(s.solver.seed == 7);
  CHECK(s.tol_verdict == 0.05);
  CHECK_NOTHROW(validate_scenario(s));
}

TEST_CASE("scenario validation failures") {
  CHECK_THROWS_AS(parse_scenario("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"bogus_key": 1})"), ConfigError);

  // fewer than 3 resolutions
  ScenarioSpec s = parse_scenario(small_scenario("\"identities\""));
  s.resolutions = {64};
  CHECK_THROWS_AS(validate_scenario(s), ConfigError);
  // not strictly increasing
  s.resolutions = {64, 64, 128};
  CHECK_THROWS_AS(validate_scenario(s), ConfigError);
  // below the stencil minimum
  s.resolutions = {3, 5, 9};
  CHECK_THROWS_AS(validate_scenario(s), ConfigError);
  s.resolutions = {17, 33, 65};
  CHECK_NOTHROW(validate_scenario(s));

  // unknown check name
  ScenarioSpec u = parse_scenario(small_scenario("\"thm99\""));
  CHECK_THROWS_AS(validate_scenario(u), ConfigError);
  // expectation for a check that is not run
  ScenarioSpec e = parse_scenario(small_scenario(
      "\"identities\"", R"(, "expect": {"thm11": "pass"})"));
  CHECK_THROWS_AS(validate_scenario(e), ConfigError);
  // containment check without exponents to test
  ScenarioSpec a = parse_scenario(small_scenario("\"prop21\""));
  a.alpha_list.clear();
  CHECK_THROWS_AS(validate_scenario(a), ConfigError);
  // tabulated weights cannot ride a refinement ladder
  ScenarioSpec t = parse_scenario(small_scenario("\"identities\""));
  t.weight = WeightSpec::tabulated(std::vector<double>(17, 0.0));
  CHECK_THROWS_AS(validate_scenario(t), ConfigError);
}

TEST_CASE("run_scenario produces verdicts and traces") {
  ScenarioSpec s =
      parse_scenario(small_scenario("\"prop21\", \"identities\""));
  Report rep = run_scenario(s);
  CHECK(rep.verdicts.size() == 4);  // prop21 + identities at 3 alphas
  CHECK(rep.eigen_table.size() == 3);
  CHECK_FALSE(rep.traces.empty());
  CHECK(rep.all_as_expected());
  for (const VerdictRow& r : rep.verdicts) {
    CHECK(r.verdict.outcome != Verdict::Outcome::fail);
  }
}

TEST_CASE("empty check set emits a header-only CSV") {
  ScenarioSpec s = parse_scenario(small_scenario(""));
  Report rep = run_scenario(s);
  CHECK(report_csv(rep) ==
        "claim,p,alpha,lambda_p,lambda_2p,gamma,lambda_buck,lhs,rhs,margin,"
        "outcome,flags\n");
}

TEST_CASE("JSON report is deterministic and round-trips") {
  ScenarioSpec s = parse_scenario(small_scenario("\"identities\""));
  const std::string a = report_json(run_scenario(s));
  const std::string b = report_json(run_scenario(s));
  CHECK(a == b);

  // every number survives parse -> dump unchanged
  auto j = nlohmann::ordered_json::parse(a);
  CHECK(j.dump(2) + "\n" == a);
  CHECK(j.at("schema_version") == "1");
  CHECK(j.contains("verdicts"));
  CHECK(j.contains("eigenvalues"));
  CHECK_FALSE(j.at("eigenvalues")[0].contains("wall_ms"));
}

TEST_CASE("expectation pinning drives as_expected") {
  ScenarioSpec s = parse_scenario(small_scenario(
      "\"identities\"", R"(, "expect": {"identities": "fail"})"));
  Report rep = run_scenario(s);
  CHECK_FALSE(rep.all_as_expected());  // they pass, the pin says fail
}

TEST_CASE("unconverged solves yield inconclusive verdicts, not failures") {
  ScenarioSpec s = parse_scenario(small_scenario("\"thm11\""));
  s.p_list = {3.0};
  s.solver.max_outer = 1;  // starve the nonlinear solves
  Report rep = run_scenario(s);
  REQUIRE(rep.verdicts.size() == 1);
  CHECK(rep.verdicts[0].verdict.outcome == Verdict::Outcome::inconclusive);
}

TEST_CASE("sweep: cell grid, ordering and isolation") {
  ScenarioSpec s = parse_scenario(small_scenario("\"thm11\""));
  s.p_list = {2.0, 3.0};
  s.alpha_list.clear();
  s.weight_sweep = {WeightSpec::zero(),
                    WeightSpec::quadratic(1.0, {0.5, 0.0})};
  SweepResult res = sweep(s);
  CHECK(res.reports.size() == 4);
  CHECK(res.errors.empty());
  // weight-major, then p
  CHECK(res.reports[0].scenario.weight.form == WeightSpec::Form::zero);
  CHECK(res.reports[1].scenario.p_list == std::vector<double>{3.0});
  CHECK(res.reports[2].scenario.weight.form == WeightSpec::Form::quadratic);

  // a failing cell is recorded and the rest still run
  s.weight_sweep[1] = WeightSpec::tabulated({1.0});
  SweepResult bad = sweep(s);
  CHECK(bad.reports.size() == 2);
  CHECK(bad.errors.size() == 2);
  CHECK_FALSE(bad.all_as_expected());

  const std::string csv = sweep_csv(res);
  CHECK(csv.find("thm11") != std::string::npos);
}

TEST_CASE("sweep cell budget") {
  ScenarioSpec s = parse_scenario(small_scenario("\"prop21\""));
  s.p_list.assign(200, 2.0);
  s.alpha_list.assign(200, 2.0);
  CHECK_THROWS_AS(sweep(s), ConfigError);
}

TEST_CASE("verdict values are traceable to the eigenvalue table") {
  ScenarioSpec s = parse_scenario(small_scenario("\"thm11\""));
  Report rep = run_scenario(s);
  REQUIRE(rep.verdicts.size() == 1);
  const VerdictRow& v = rep.verdicts[0];
  bool found_p = false, found_2p = false;
  for (const EigenRow& e : rep.eigen_table) {
    if (e.resolution != s.resolutions.back()) continue;
    if (e.lambda == v.lambda_p) found_p = true;
    if (e.lambda == v.lambda_2p) found_2p = true;
  }
  CHECK(found_p);
  CHECK(found_2p);
}

TEST_CASE("file output errors carry the path") {
  try {
    write_text_file("/nonexistent-dir/x.json", "{}");
    CHECK(false);
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/x.json") !=
          std::string::npos);
  }
}
