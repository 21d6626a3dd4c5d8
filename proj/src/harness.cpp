#include "wplab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

namespace wplab {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::set<std::string> kKnownChecks = {
    "thm11", "thm12-case1", "thm12-case2", "prop21", "identities", "bochner"};
const std::set<std::string> kOutcomes = {"pass", "fail", "inconclusive"};

constexpr double kIdentityTol = 1e-2;

// All serialized numbers pass through here so that emit -> parse -> emit is
// byte-identical.
double round12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt_short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// ---------------------------------------------------------------- parsing

std::vector<double> number_list(const ordered_json& j, const std::string& key) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array())
    throw ConfigError("'" + key + "' must be a number or an array");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number())
      throw ConfigError("'" + key + "' entries must be numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

void reject_unknown_keys(const ordered_json& j, const std::set<std::string>& ok,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.count(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

DomainSpec parse_domain(const ordered_json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("'domain' must be an object with a 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "interval") {
    reject_unknown_keys(j, {"kind", "a", "b"}, "domain");
    return DomainSpec::interval(j.value("a", 0.0), j.value("b", 1.0), 0);
  }
  if (kind == "rectangle") {
    reject_unknown_keys(j, {"kind", "ax", "bx", "ay", "by"}, "domain");
    return DomainSpec::rectangle(j.value("ax", 0.0), j.value("bx", 1.0),
                                 j.value("ay", 0.0), j.value("by", 1.0), 0, 0);
  }
  throw ConfigError("domain kind must be 'interval' or 'rectangle'");
}

WeightSpec parse_weight(const ordered_json& j) {
  if (!j.is_object() || !j.contains("form"))
    throw ConfigError("'weight' must be an object with a 'form'");
  const std::string form = j.at("form").get<std::string>();
  if (form == "zero") {
    reject_unknown_keys(j, {"form"}, "weight");
    return WeightSpec::zero();
  }
  if (form == "linear") {
    reject_unknown_keys(j, {"form", "a"}, "weight");
    auto a = number_list(j.at("a"), "weight.a");
    if (a.empty() || a.size() > 2)
      throw ConfigError("weight.a needs 1 or 2 components");
    return WeightSpec::linear(a[0], a.size() > 1 ? a[1] : 0.0);
  }
  if (form == "quadratic") {
    reject_unknown_keys(j, {"form", "c", "x0"}, "weight");
    std::array<double, 2> x0{0.0, 0.0};
    if (j.contains("x0")) {
      auto v = number_list(j.at("x0"), "weight.x0");
      if (v.empty() || v.size() > 2)
        throw ConfigError("weight.x0 needs 1 or 2 components");
      x0[0] = v[0];
      if (v.size() > 1) x0[1] = v[1];
    }
    if (!j.contains("c")) throw ConfigError("quadratic weight needs 'c'");
    return WeightSpec::quadratic(j.at("c").get<double>(), x0);
  }
  if (form == "tabulated") {
    reject_unknown_keys(j, {"form", "values"}, "weight");
    if (!j.contains("values"))
      throw ConfigError("tabulated weight needs 'values'");
    return WeightSpec::tabulated(number_list(j.at("values"), "weight.values"));
  }
  throw ConfigError("weight form must be zero|linear|quadratic|tabulated");
}

ordered_json domain_json(const DomainSpec& d) {
  ordered_json j;
  if (d.kind == DomainSpec::Kind::interval) {
    j["kind"] = "interval";
    j["a"] = round12(d.ax);
    j["b"] = round12(d.bx);
  } else {
    j["kind"] = "rectangle";
    j["ax"] = round12(d.ax);
    j["bx"] = round12(d.bx);
    j["ay"] = round12(d.ay);
    j["by"] = round12(d.by);
  }
  return j;
}

ordered_json weight_json(const WeightSpec& w) {
  ordered_json j;
  switch (w.form) {
    case WeightSpec::Form::zero:
      j["form"] = "zero";
      break;
    case WeightSpec::Form::linear:
      j["form"] = "linear";
      j["a"] = {round12(w.a[0]), round12(w.a[1])};
      break;
    case WeightSpec::Form::quadratic:
      j["form"] = "quadratic";
      j["c"] = round12(w.c);
      j["x0"] = {round12(w.x0[0]), round12(w.x0[1])};
      break;
    case WeightSpec::Form::tabulated: {
      j["form"] = "tabulated";
      ordered_json vals = ordered_json::array();
      for (double v : w.values) vals.push_back(round12(v));
      j["values"] = std::move(vals);
      break;
    }
  }
  return j;
}

// --------------------------------------------------------------- pipeline

struct SolveKey {
  std::string problem;
  long long p_key;  // p * 1e9, rounded; 0 for plate/buckling
  int resolution;
  bool operator<(const SolveKey& o) const {
    return std::tie(problem, p_key, resolution) <
           std::tie(o.problem, o.p_key, o.resolution);
  }
};

class Runner {
 public:
  explicit Runner(const ScenarioSpec& spec) : s_(spec) {
    rep_.scenario = spec;
    for (int r : s_.resolutions) {
      grids_.push_back(std::make_unique<Grid>(s_.domain.with_resolution(r)));
      weights_.push_back(std::make_unique<WeightField>(
          weight_tables(s_.weight, *grids_.back())));
    }
  }

  Report run() {
    for (const std::string& check : s_.checks) {
      if (check == "thm11") {
        for (double p : s_.p_list) run_thm11(p);
      } else if (check == "thm12-case1") {
        run_thm12(1);
      } else if (check == "thm12-case2") {
        run_thm12(2);
      } else if (check == "prop21") {
        for (double p : s_.p_list)
          for (double alpha : s_.alpha_list) run_prop21(p, alpha);
      } else if (check == "identities") {
        run_identities();
      } else if (check == "bochner") {
        for (double p : s_.p_list) run_bochner(p);
      }
    }
    return std::move(rep_);
  }

 private:
  int finest() const { return static_cast<int>(grids_.size()) - 1; }

  const EigenResult& dirichlet(double p, int ri) {
    return cached({"dirichlet", llround(p * 1e9), s_.resolutions[ri]}, p, ri);
  }
  const EigenResult& plate(int ri) {
    return cached({"plate", 0, s_.resolutions[ri]}, 0.0, ri);
  }
  const EigenResult& buckling(int ri) {
    return cached({"buckling", 0, s_.resolutions[ri]}, 0.0, ri);
  }

  const EigenResult& cached(const SolveKey& key, double p, int ri) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    const Grid& g = *grids_[ri];
    const WeightField& w = *weights_[ri];
    EigenResult res;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      if (key.problem == "plate")
        res = solve_clamped_plate(g, w, s_.solver);
      else if (key.problem == "buckling")
        res = solve_buckling(g, w, s_.solver);
      else if (near(p, 2.0))
        res = solve_linear_dirichlet(g, w, s_.solver);
      else
        res = solve_plaplacian_dirichlet(g, w, p, s_.solver);
    } catch (const std::exception& e) {
      res = EigenResult{};
      res.u = ScalarField(g);
      res.converged = false;
      rep_.notes.push_back(key.problem + " solve failed at n=" +
                           std::to_string(key.resolution) + ": " + e.what());
    }
    const auto t1 = std::chrono::steady_clock::now();

    EigenRow row;
    row.problem = key.problem;
    row.p = p;
    row.resolution = key.resolution;
    row.lambda = res.lambda;
    row.residual = res.residual;
    row.iterations = res.iterations;
    row.converged = res.converged;
    row.wall_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    rep_.eigen_table.push_back(row);

    return cache_.emplace(key, std::move(res)).first->second;
  }

  // Hypothesis on the weight and eigenfunction:
  //   Hess f + c * Hess u / u >= 0, with c = 0 meaning Ric_f >= 0 alone.
  ConditionReport curvature(double c, const EigenResult* eig) {
    const WeightField& w = *weights_[finest()];
    ConditionReport rep;
    if (std::abs(c) < 1e-12 || eig == nullptr) {
      rep = curvature_condition(std::nullopt, w, 0.0, s_.tol_cond);
      rep.name = "Ric_f>=0";
    } else {
      std::optional<ScalarField> u;
      if (eig->converged) u = eig->u;
      rep = curvature_condition(u, w, c, s_.tol_cond);
      rep.name = "Ric_f+(" + fmt_short(c) + ")Hess(u)/u>=0";
      if (!eig->converged) rep.satisfied = false;
    }
    rep_.conditions.push_back(rep);
    return rep;
  }

  ConditionReport hf() {
    ConditionReport rep =
        hf_boundary(*weights_[finest()], *grids_[finest()], s_.tol_cond);
    rep.name = "H_f>=0";
    rep_.conditions.push_back(rep);
    return rep;
  }

  void mark_unconverged(Verdict& v) {
    v.outcome = Verdict::Outcome::inconclusive;
    v.notes = v.notes.empty() ? "unconverged solve"
                              : v.notes + "; unconverged solve";
    v.flags.push_back("unconverged");
  }

  void finish_row(VerdictRow row) {
    const auto it = s_.expect.find(row.check);
    if (it != s_.expect.end()) {
      row.expected = it->second;
      row.as_expected = row.verdict.outcome_name() == it->second;
    } else {
      row.as_expected = row.verdict.outcome != Verdict::Outcome::fail;
    }
    rep_.verdicts.push_back(std::move(row));
  }

  void add_trace(const std::string& name, const FunctionalEstimate& est) {
    TraceRow t;
    t.name = name;
    t.values = est.refinement_trace;
    t.suspected_divergent = est.suspected_divergent;
    rep_.traces.push_back(std::move(t));
  }

  void run_thm11(double p) {
    for (int ri = 0; ri <= finest(); ++ri) {
      dirichlet(p, ri);
      dirichlet(2.0 * p, ri);
    }
    const EigenResult& ep = dirichlet(p, finest());
    const EigenResult& e2p = dirichlet(2.0 * p, finest());
    const double c = -(p - 1.0) * (p - 2.0);
    ConditionReport cond = curvature(c, &ep);
    ConditionReport hfr = hf();
    Verdict v = check_thm11(ep.lambda, e2p.lambda, p, cond, hfr,
                            s_.tol_verdict);
    if (!ep.converged || !e2p.converged) mark_unconverged(v);
    if (ep.degraded || e2p.degraded) v.flags.push_back("degraded-inner-solve");

    VerdictRow row;
    row.check = "thm11";
    row.verdict = std::move(v);
    row.p = p;
    row.has_p = true;
    row.lambda_p = ep.lambda;
    row.has_lambda_p = true;
    row.lambda_2p = e2p.lambda;
    row.has_lambda_2p = true;
    finish_row(std::move(row));
  }

  void run_thm12(int which_case) {
    for (int ri = 0; ri <= finest(); ++ri) {
      dirichlet(2.0, ri);
      plate(ri);
      buckling(ri);
    }
    const EigenResult& lin = dirichlet(2.0, finest());
    const EigenResult& pl = plate(finest());
    const EigenResult& bu = buckling(finest());

    FunctionalEstimate i_est = make_functional_estimate({0.0});
    ConditionReport cond;
    if (which_case == 1) {
      std::vector<double> trace;
      bool trace_ok = true;
      for (int ri = 0; ri <= finest(); ++ri) {
        const EigenResult& e = dirichlet(2.0, ri);
        if (!e.converged) {
          trace_ok = false;
          break;
        }
        trace.push_back(i_functional_value(e.u, 2.0, 2.0 / 3.0, *weights_[ri]));
      }
      if (trace_ok) {
        i_est = make_functional_estimate(trace);
        add_trace("I[p=2,alpha=2/3]", i_est);
      }
      cond = curvature(-4.0 / 3.0, &lin);
    } else {
      cond = curvature(0.0, nullptr);
    }
    ConditionReport hfr = hf();

    std::vector<Verdict> vs =
        check_thm12(lin.lambda, pl.lambda, bu.lambda, which_case, cond, hfr,
                    i_est, s_.tol_verdict);
    const bool ok = lin.converged && pl.converged && bu.converged;
    const std::string check =
        which_case == 1 ? "thm12-case1" : "thm12-case2";
    for (Verdict& v : vs) {
      if (!ok) mark_unconverged(v);
      VerdictRow row;
      const bool is_plate = v.claim == "thm12.plate";
      row.check = check;
      row.verdict = std::move(v);
      row.p = 2.0;
      row.has_p = true;
      row.lambda_p = lin.lambda;
      row.has_lambda_p = true;
      if (is_plate) {
        row.gamma = pl.lambda;
        row.has_gamma = true;
      } else {
        row.lambda_buck = bu.lambda;
        row.has_lambda_buck = true;
      }
      finish_row(std::move(row));
    }
  }

  void run_prop21(double p, double alpha) {
    std::vector<double> trace;
    bool trace_ok = true;
    for (int ri = 0; ri <= finest(); ++ri) {
      const EigenResult& e = dirichlet(p, ri);
      if (!e.converged) {
        trace_ok = false;
        continue;
      }
      trace.push_back(i_functional_value(e.u, p, alpha, *weights_[ri]));
    }
    const EigenResult& ep = dirichlet(p, finest());
    FunctionalEstimate i_est = trace_ok && !trace.empty()
                                   ? make_functional_estimate(trace)
                                   : make_functional_estimate({0.0});
    if (trace_ok && !trace.empty())
      add_trace("I[p=" + fmt_short(p) + ",alpha=" + fmt_short(alpha) + "]",
                i_est);

    const double c = (p - 1.0) * (alpha - 2.0 * p + 2.0);
    ConditionReport cond = curvature(c, &ep);
    ConditionReport hfr = hf();
    Verdict v =
        check_prop21(i_est, ep.lambda, p, alpha, cond, hfr, s_.tol_verdict);
    if (!ep.converged || !trace_ok) mark_unconverged(v);
    if (ep.degraded) v.flags.push_back("degraded-inner-solve");

    VerdictRow row;
    row.check = "prop21";
    row.verdict = std::move(v);
    row.p = p;
    row.has_p = true;
    row.alpha = alpha;
    row.has_alpha = true;
    row.lambda_p = ep.lambda;
    row.has_lambda_p = true;
    finish_row(std::move(row));
  }

  void run_identities() {
    for (int ri = 0; ri <= finest(); ++ri) dirichlet(2.0, ri);
    const EigenResult& fin = dirichlet(2.0, finest());
    for (double alpha : {1.0, 2.0, 3.0}) {
      std::vector<double> trace;
      bool ok = true;
      for (int ri = 0; ri <= finest(); ++ri) {
        const EigenResult& e = dirichlet(2.0, ri);
        if (!e.converged) {
          ok = false;
          break;
        }
        trace.push_back(
            identity_residual(e.u, e.lambda, 2.0, alpha, *weights_[ri]));
      }
      Verdict v;
      v.claim = "identity23";
      v.hypotheses_satisfied = ok;
      v.hypothesis_breakdown.emplace_back("converged-eigenpair", ok);
      if (ok) {
        add_trace("identity-residual[alpha=" + fmt_short(alpha) + "]",
                  make_functional_estimate(trace));
        v.lhs = trace.back();
        v.rhs = kIdentityTol;
        v.margin = (v.rhs - v.lhs) / v.rhs;
        v.outcome = v.lhs <= v.rhs ? Verdict::Outcome::pass
                                   : Verdict::Outcome::fail;
        v.notes = "relative residual of the alpha-energy identity";
      } else {
        mark_unconverged(v);
      }
      VerdictRow row;
      row.check = "identities";
      row.verdict = std::move(v);
      row.p = 2.0;
      row.has_p = true;
      row.alpha = alpha;
      row.has_alpha = true;
      row.lambda_p = fin.lambda;
      row.has_lambda_p = true;
      finish_row(std::move(row));
    }
  }

  void run_bochner(double p) {
    std::vector<double> trace;
    bool ok = true;
    for (int ri = 0; ri <= finest(); ++ri) {
      const EigenResult& e = dirichlet(p, ri);
      if (!e.converged) {
        ok = false;
        break;
      }
      trace.push_back(bochner_residual(e.u, *weights_[ri], p).sup_norm);
    }
    Verdict v;
    v.claim = "bochner";
    v.hypotheses_satisfied = ok;
    v.hypothesis_breakdown.emplace_back("converged-eigenpair", ok);
    if (ok) {
      TraceRow t;
      t.name = "bochner-residual[p=" + fmt_short(p) + "]";
      t.values = trace;
      rep_.traces.push_back(t);
      // Pass = the sup-norm residual shrinks over the refinement ladder.
      v.lhs = trace.back();
      v.rhs = trace.front();
      v.margin = (v.rhs - v.lhs) / v.rhs;
      v.outcome = v.lhs < v.rhs ? Verdict::Outcome::pass
                                : Verdict::Outcome::fail;
      v.notes = "pointwise identity residual, coarsest vs finest sup-norm";
    } else {
      mark_unconverged(v);
    }
    VerdictRow row;
    row.check = "bochner";
    row.verdict = std::move(v);
    row.p = p;
    row.has_p = true;
    finish_row(std::move(row));
  }

  const ScenarioSpec& s_;
  Report rep_;
  std::vector<std::unique_ptr<Grid>> grids_;
  std::vector<std::unique_ptr<WeightField>> weights_;
  std::map<SolveKey, EigenResult> cache_;
};

}  // namespace

// ------------------------------------------------------------- public API

ScenarioSpec parse_scenario(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
  reject_unknown_keys(j,
                      {"name", "domain", "weight", "weights", "p", "alpha",
                       "resolutions", "checks", "expect", "solver", "seed",
                       "tol_verdict", "tol_cond"},
                      "scenario");

  ScenarioSpec s;
  if (j.contains("name")) s.name = j.at("name").get<std::string>();
  if (j.contains("domain")) s.domain = parse_domain(j.at("domain"));
  if (j.contains("weight")) s.weight = parse_weight(j.at("weight"));
  if (j.contains("weights")) {
    if (!j.at("weights").is_array())
      throw ConfigError("'weights' must be an array of weight objects");
    for (const auto& e : j.at("weights"))
      s.weight_sweep.push_back(parse_weight(e));
  }
  if (j.contains("p")) s.p_list = number_list(j.at("p"), "p");
  if (j.contains("alpha")) s.alpha_list = number_list(j.at("alpha"), "alpha");
  if (j.contains("resolutions")) {
    s.resolutions.clear();
    for (const auto& e : j.at("resolutions")) {
      if (!e.is_number_integer())
        throw ConfigError("'resolutions' entries must be integers");
      s.resolutions.push_back(e.get<int>());
    }
  }
  if (j.contains("checks")) {
    for (const auto& e : j.at("checks"))
      s.checks.push_back(e.get<std::string>());
  }
  if (j.contains("expect")) {
    for (auto it = j.at("expect").begin(); it != j.at("expect").end(); ++it)
      s.expect[it.key()] = it.value().get<std::string>();
  }
  if (j.contains("solver")) {
    const auto& o = j.at("solver");
    reject_unknown_keys(o, {"tol", "max_outer", "max_inner", "eps",
                            "inner_tol"},
                        "solver");
    s.solver.tol = o.value("tol", s.solver.tol);
    s.solver.max_outer = o.value("max_outer", s.solver.max_outer);
    s.solver.max_inner = o.value("max_inner", s.solver.max_inner);
    s.solver.eps = o.value("eps", s.solver.eps);
    s.solver.inner_tol = o.value("inner_tol", s.solver.inner_tol);
  }
  if (j.contains("seed")) s.solver.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tol_verdict"))
    s.tol_verdict = j.at("tol_verdict").get<double>();
  if (j.contains("tol_cond")) s.tol_cond = j.at("tol_cond").get<double>();
  // Structural validation happens here; scenario-level rules (resolution
  // ladder, check set) are enforced by run_scenario/sweep so that `solve`
  // can use single-resolution files.
  return s;
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

void validate_scenario(const ScenarioSpec& s) {
  if (s.resolutions.size() < 3)
    throw ConfigError(
        "at least 3 resolutions are required for refinement traces");
  for (size_t i = 0; i < s.resolutions.size(); ++i) {
    if (s.resolutions[i] < Grid::kMinNodesPerAxis)
      throw ConfigError("resolution below the stencil minimum of " +
                        std::to_string(Grid::kMinNodesPerAxis));
    if (i > 0 && s.resolutions[i] <= s.resolutions[i - 1])
      throw ConfigError("resolutions must be strictly increasing");
  }
  for (const std::string& c : s.checks) {
    if (!kKnownChecks.count(c)) throw ConfigError("unknown check '" + c + "'");
  }
  for (const auto& [check, outcome] : s.expect) {
    if (std::find(s.checks.begin(), s.checks.end(), check) == s.checks.end())
      throw ConfigError("expectation for check '" + check +
                        "' that the scenario does not run");
    if (!kOutcomes.count(outcome))
      throw ConfigError("expected outcome must be pass|fail|inconclusive");
  }
  for (double p : s.p_list) {
    if (!(p > 1.0)) throw ConfigError("exponents p must satisfy p > 1");
  }
  auto has_check = [&](const char* c) {
    return std::find(s.checks.begin(), s.checks.end(), c) != s.checks.end();
  };
  auto has_p2 = [&] {
    return std::any_of(s.p_list.begin(), s.p_list.end(),
                       [](double p) { return near(p, 2.0); });
  };
  if ((has_check("thm11") || has_check("prop21") || has_check("bochner")) &&
      s.p_list.empty())
    throw ConfigError("this check set needs a nonempty p list");
  if ((has_check("thm12-case1") || has_check("thm12-case2") ||
       has_check("identities")) &&
      !has_p2())
    throw ConfigError("plate/buckling and identity checks need p = 2 in the "
                      "p list");
  if (has_check("prop21") && s.alpha_list.empty())
    throw ConfigError("prop21 needs a nonempty alpha list");
  if (s.weight.form == WeightSpec::Form::tabulated)
    throw ConfigError(
        "tabulated weights fix one node count and cannot ride a refinement "
        "ladder; use an analytic form in scenarios");
  if (!(s.tol_verdict > 0.0)) throw ConfigError("tol_verdict must be > 0");
  if (s.tol_cond < 0.0) throw ConfigError("tol_cond must be >= 0");
}

bool Report::all_as_expected() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const VerdictRow& r) { return r.as_expected; });
}

bool SweepResult::all_as_expected() const {
  if (!errors.empty()) return false;
  return std::all_of(reports.begin(), reports.end(),
                     [](const Report& r) { return r.all_as_expected(); });
}

Report run_scenario(const ScenarioSpec& spec) {
  validate_scenario(spec);
  return Runner(spec).run();
}

SweepResult sweep(const ScenarioSpec& spec) {
  validate_scenario(spec);
  std::vector<WeightSpec> weights =
      spec.weight_sweep.empty() ? std::vector<WeightSpec>{spec.weight}
                                : spec.weight_sweep;
  std::vector<double> alphas =
      spec.alpha_list.empty() ? std::vector<double>{0.0} : spec.alpha_list;
  const size_t cells = weights.size() * spec.p_list.size() * alphas.size();
  if (cells > 10000) throw ConfigError("sweep exceeds 10^4 cells");

  SweepResult out;
  size_t wi = 0;
  for (const WeightSpec& w : weights) {
    ++wi;
    for (double p : spec.p_list) {
      for (double alpha : alphas) {
        ScenarioSpec cell = spec;
        cell.weight = w;
        cell.weight_sweep.clear();
        cell.p_list = {p};
        if (!spec.alpha_list.empty()) cell.alpha_list = {alpha};
        cell.name = spec.name + "[w" + std::to_string(wi) +
                    ",p=" + fmt_short(p) +
                    (spec.alpha_list.empty()
                         ? std::string()
                         : ",alpha=" + fmt_short(alpha)) +
                    "]";
        try {
          out.reports.push_back(run_scenario(cell));
        } catch (const std::exception& e) {
          out.errors.push_back(cell.name + ": " + e.what());
        }
      }
    }
  }
  return out;
}

// ------------------------------------------------------------- emission

namespace {

ordered_json scenario_json(const ScenarioSpec& s) {
  ordered_json j;
  j["name"] = s.name;
  j["domain"] = domain_json(s.domain);
  j["weight"] = weight_json(s.weight);
  j["p"] = ordered_json::array();
  for (double p : s.p_list) j["p"].push_back(round12(p));
  j["alpha"] = ordered_json::array();
  for (double a : s.alpha_list) j["alpha"].push_back(round12(a));
  j["resolutions"] = s.resolutions;
  j["checks"] = s.checks;
  ordered_json exp = ordered_json::object();
  for (const auto& [k, v] : s.expect) exp[k] = v;  // std::map: sorted, stable
  j["expect"] = std::move(exp);
  j["seed"] = s.solver.seed;
  j["tol_verdict"] = round12(s.tol_verdict);
  j["tol_cond"] = round12(s.tol_cond);
  return j;
}

ordered_json verdict_json(const VerdictRow& r) {
  ordered_json j;
  j["check"] = r.check;
  j["claim"] = r.verdict.claim;
  if (r.has_p) j["p"] = round12(r.p);
  if (r.has_alpha) j["alpha"] = round12(r.alpha);
  if (r.has_lambda_p) j["lambda_p"] = round12(r.lambda_p);
  if (r.has_lambda_2p) j["lambda_2p"] = round12(r.lambda_2p);
  if (r.has_gamma) j["gamma"] = round12(r.gamma);
  if (r.has_lambda_buck) j["lambda_buck"] = round12(r.lambda_buck);
  j["hypotheses_satisfied"] = r.verdict.hypotheses_satisfied;
  ordered_json hyp = ordered_json::array();
  for (const auto& [name, ok] : r.verdict.hypothesis_breakdown)
    hyp.push_back(ordered_json{{"condition", name}, {"satisfied", ok}});
  j["hypotheses"] = std::move(hyp);
  j["lhs"] = round12(r.verdict.lhs);
  j["rhs"] = round12(r.verdict.rhs);
  j["margin"] = round12(r.verdict.margin);
  j["outcome"] = r.verdict.outcome_name();
  j["notes"] = r.verdict.notes;
  j["flags"] = r.verdict.flags;
  if (!r.expected.empty()) j["expected"] = r.expected;
  j["as_expected"] = r.as_expected;
  return j;
}

ordered_json report_json_obj(const Report& rep) {
  ordered_json j;
  j["schema_version"] = rep.schema_version;
  j["scenario"] = scenario_json(rep.scenario);

  ordered_json eigs = ordered_json::array();
  for (const EigenRow& e : rep.eigen_table) {
    ordered_json r;
    r["problem"] = e.problem;
    if (e.problem == "dirichlet") r["p"] = round12(e.p);
    r["resolution"] = e.resolution;
    r["lambda"] = round12(e.lambda);
    r["residual"] = round12(e.residual);
    r["iterations"] = e.iterations;
    r["converged"] = e.converged;
    // wall_ms deliberately omitted: reports must be byte-stable across runs
    eigs.push_back(std::move(r));
  }
  j["eigenvalues"] = std::move(eigs);

  ordered_json traces = ordered_json::array();
  for (const TraceRow& t : rep.traces) {
    ordered_json r;
    r["name"] = t.name;
    ordered_json vals = ordered_json::array();
    for (double v : t.values) vals.push_back(round12(v));
    r["values"] = std::move(vals);
    r["suspected_divergent"] = t.suspected_divergent;
    traces.push_back(std::move(r));
  }
  j["traces"] = std::move(traces);

  ordered_json conds = ordered_json::array();
  for (const ConditionReport& c : rep.conditions) {
    ordered_json r;
    r["name"] = c.name;
    r["min_value"] = round12(c.min_value);
    r["satisfied"] = c.satisfied;
    r["location"] = c.location;
    r["tol_cond"] = round12(c.tol_cond);
    conds.push_back(std::move(r));
  }
  j["conditions"] = std::move(conds);

  ordered_json verdicts = ordered_json::array();
  for (const VerdictRow& r : rep.verdicts) verdicts.push_back(verdict_json(r));
  j["verdicts"] = std::move(verdicts);
  j["notes"] = rep.notes;
  return j;
}

const char* kCsvHeader =
    "claim,p,alpha,lambda_p,lambda_2p,gamma,lambda_buck,lhs,rhs,margin,"
    "outcome,flags\n";

void append_csv_row(std::string& out, const VerdictRow& r) {
  auto cell = [](bool has, double v) {
    return has ? fmt12(v) : std::string();
  };
  out += r.verdict.claim;
  out += ',' + cell(r.has_p, r.p);
  out += ',' + cell(r.has_alpha, r.alpha);
  out += ',' + cell(r.has_lambda_p, r.lambda_p);
  out += ',' + cell(r.has_lambda_2p, r.lambda_2p);
  out += ',' + cell(r.has_gamma, r.gamma);
  out += ',' + cell(r.has_lambda_buck, r.lambda_buck);
  out += ',' + fmt12(r.verdict.lhs);
  out += ',' + fmt12(r.verdict.rhs);
  out += ',' + fmt12(r.verdict.margin);
  out += ',' + r.verdict.outcome_name();
  out += ',' + join(r.verdict.flags, ";");
  out += '\n';
}

}  // namespace

std::string report_json(const Report& report) {
  return report_json_obj(report).dump(2) + "\n";
}

std::string report_csv(const Report& report) {
  std::string out = kCsvHeader;
  for (const VerdictRow& r : report.verdicts) append_csv_row(out, r);
  return out;
}

std::string sweep_json(const SweepResult& result) {
  ordered_json j;
  j["schema_version"] = "1";
  ordered_json cells = ordered_json::array();
  for (const Report& r : result.reports) cells.push_back(report_json_obj(r));
  j["cells"] = std::move(cells);
  j["errors"] = result.errors;
  return j.dump(2) + "\n";
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = kCsvHeader;
  for (const Report& rep : result.reports)
    for (const VerdictRow& r : rep.verdicts) append_csv_row(out, r);
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace wplab
