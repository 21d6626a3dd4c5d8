#include "wplab/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "wplab/errors.hpp"

namespace wplab {

double default_tol_verdict() { return 0.02; }

BoundPair prop21_bounds(double p, double alpha) {
  if (p <= 1.0) throw ParameterError("bound coefficients require p > 1");
  BoundPair out;
  const double d = alpha - p + 1.0;
  if (std::abs(d) < 1e-12) {
    out.validity = BoundPair::Validity::degenerate;
    return out;
  }
  const double q = p * p / (2.0 * p - 1.0);
  double disc = 4.0 * d + q;
  // a mathematically vanishing discriminant (double root) lands a few ulps
  // below zero; only a genuinely negative value is complex
  if (disc < 0.0 && disc > -1e-12 * (1.0 + q)) disc = 0.0;
  if (disc < 0.0) {
    out.validity = BoundPair::Validity::complex_discriminant;
    return out;
  }
  const double mid = 2.0 * d + q;
  const double spread = p / std::sqrt(2.0 * p - 1.0) * std::sqrt(disc);
  const double denom = 2.0 * d * d;
  out.lower = (mid - spread) / denom;
  out.upper = (mid + spread) / denom;
  return out;
}

BoundPair thm11_coefficients(double p) {
  BoundPair b = prop21_bounds(p, p);
  b.lower /= p + 1.0;
  b.upper /= p + 1.0;
  return b;
}

PlateBucklingConstants thm12_constants() { return {}; }

namespace {

// Margin of the binding side of lo <= r <= up, each side written as
// lhs <= rhs with margin (rhs - lhs) / rhs.
void fill_two_sided(Verdict& v, double r, double lo, double up,
                    double tol_verdict) {
  const double m_up = (up - r) / up;
  const double m_lo = (r - lo) / r;
  if (m_up <= m_lo) {
    v.lhs = r;
    v.rhs = up;
    v.margin = m_up;
  } else {
    v.lhs = lo;
    v.rhs = r;
    v.margin = m_lo;
  }
  v.outcome = v.margin >= -tol_verdict ? Verdict::Outcome::pass
                                       : Verdict::Outcome::fail;
}

void fill_one_sided(Verdict& v, double lhs, double rhs, double tol_verdict) {
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = (rhs - lhs) / rhs;
  v.outcome = v.margin >= -tol_verdict ? Verdict::Outcome::pass
                                       : Verdict::Outcome::fail;
}

bool gather_hypotheses(Verdict& v, const ConditionReport& cond,
                       const ConditionReport& hf) {
  v.hypothesis_breakdown.emplace_back(cond.name, cond.satisfied);
  v.hypothesis_breakdown.emplace_back(hf.name, hf.satisfied);
  v.hypotheses_satisfied = cond.satisfied && hf.satisfied;
  return v.hypotheses_satisfied;
}

}  // namespace

Verdict check_thm11(double lambda_p, double lambda_2p, double p,
                    const ConditionReport& cond, const ConditionReport& hf,
                    double tol_verdict) {
  Verdict v;
  v.claim = "thm11";
  const bool hyp = gather_hypotheses(v, cond, hf);
  const BoundPair c = thm11_coefficients(p);
  const double r = lambda_2p / (lambda_p * lambda_p);
  fill_two_sided(v, r, c.lower, c.upper, tol_verdict);
  if (!hyp) {
    v.outcome = Verdict::Outcome::inconclusive;
    v.notes = "hypotheses not satisfied";
  }
  return v;
}

std::vector<Verdict> check_thm12(double lambda, double gamma,
                                 double lambda_buckling, int which_case,
                                 const ConditionReport& cond,
                                 const ConditionReport& hf,
                                 const FunctionalEstimate& i_beta43,
                                 double tol_verdict) {
  if (which_case != 1 && which_case != 2)
    throw ParameterError("plate/buckling case must be 1 or 2");
  const PlateBucklingConstants k = thm12_constants();
  const double c = which_case == 1 ? k.case1 : k.case2;
  const std::string tag = which_case == 1 ? "case1" : "case2";

  std::vector<Verdict> out;
  for (int which = 0; which < 2; ++which) {
    Verdict v;
    v.claim = which == 0 ? "thm12.plate" : "thm12.buckling";
    v.notes = tag;
    const bool curv_ok = gather_hypotheses(v, cond, hf);
    bool hyp = curv_ok;
    if (which_case == 1) {
      const bool conv = !i_beta43.suspected_divergent;
      v.hypothesis_breakdown.emplace_back("test-functional-convergent", conv);
      hyp = hyp && conv;
      if (!conv) v.flags.push_back(i_beta43.flag());
    }
    v.hypotheses_satisfied = hyp;
    if (which == 0)
      fill_one_sided(v, gamma / (lambda * lambda), c, tol_verdict);
    else
      fill_one_sided(v, lambda_buckling / lambda, c, tol_verdict);
    if (!hyp) {
      const bool violated = v.outcome == Verdict::Outcome::fail;
      v.outcome = Verdict::Outcome::inconclusive;
      if (curv_ok && which_case == 1 && violated)
        v.notes = tag + ": claim numerically contradicted; test function "
                        "inadmissible (supporting functional suspected "
                        "divergent)";
      else
        v.notes = tag + ": hypotheses not satisfied";
    }
    out.push_back(std::move(v));
  }
  return out;
}

Verdict check_prop21(const FunctionalEstimate& i_est, double lambda, double p,
                     double alpha, const ConditionReport& cond,
                     const ConditionReport& hf, double tol_verdict) {
  Verdict v;
  v.claim = "prop21";
  const bool hyp = gather_hypotheses(v, cond, hf);
  const BoundPair b = prop21_bounds(p, alpha);
  if (b.validity != BoundPair::Validity::valid) {
    v.outcome = Verdict::Outcome::inconclusive;
    v.notes = "bound coefficients " + b.validity_name() + " at alpha = " +
              std::to_string(alpha);
    return v;
  }
  const double r = i_est.value / lambda;
  fill_two_sided(v, r, b.lower, b.upper, tol_verdict);
  if (i_est.suspected_divergent) {
    v.flags.push_back(i_est.flag());
    v.outcome = Verdict::Outcome::inconclusive;
    v.notes = "integrand estimate not trusted: " + i_est.flag();
    return v;
  }
  if (!hyp) {
    v.outcome = Verdict::Outcome::inconclusive;
    v.notes = "hypotheses not satisfied";
  }
  return v;
}

}  // namespace wplab
