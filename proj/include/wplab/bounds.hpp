#pragma once

#include <map>
#include <string>
#include <vector>

#include "wplab/functionals.hpp"

namespace wplab {

/// Closed-form two-sided bound coefficients. The degenerate case
/// alpha = p - 1 (linear rather than quadratic inequality) and a negative
/// discriminant are reported through the validity tag instead of infinities.
struct BoundPair {
  enum class Validity { valid, degenerate, complex_discriminant };
  double lower = 0.0;
  double upper = 0.0;
  Validity validity = Validity::valid;

  std::string validity_name() const {
    switch (validity) {
      case Validity::valid: return "valid";
      case Validity::degenerate: return "degenerate";
      case Validity::complex_discriminant: return "complex-discriminant";
    }
    return "";
  }
};

struct Verdict {
  enum class Outcome { pass, fail, inconclusive };

  std::string claim;
  bool hypotheses_satisfied = false;
  std::vector<std::pair<std::string, bool>> hypothesis_breakdown;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // (rhs - lhs) / rhs for the binding side
  Outcome outcome = Outcome::inconclusive;
  std::string notes;
  std::vector<std::string> flags;

  std::string outcome_name() const {
    switch (outcome) {
      case Outcome::pass: return "pass";
      case Outcome::fail: return "fail";
      case Outcome::inconclusive: return "inconclusive";
    }
    return "";
  }
};

/// Two-sided bound M1 <= I_{p,alpha}/lambda <= M2.
BoundPair prop21_bounds(double p, double alpha);

/// Coefficients c_-, c_+ of c_- lambda_p^2 <= lambda_2p <= c_+ lambda_p^2;
/// equal to prop21_bounds(p, p) / (p + 1).
BoundPair thm11_coefficients(double p);

/// Headline plate/buckling constants as exact rationals.
struct PlateBucklingConstants {
  double case1 = 64.0 / 45.0;
  double case2 = 16.0 / 3.0;
  double prior_buckling = 4.0;
};
PlateBucklingConstants thm12_constants();

double default_tol_verdict();

Verdict check_thm11(double lambda_p, double lambda_2p, double p,
                    const ConditionReport& cond, const ConditionReport& hf,
                    double tol_verdict = default_tol_verdict());

/// Plate and buckling verdicts for one of the two hypothesis cases.
/// case 1 additionally requires the beta = 4/3 functional to be convergent;
/// a satisfied hypothesis with a divergent functional and a violated bound
/// yields "inconclusive / claim numerically contradicted".
std::vector<Verdict> check_thm12(double lambda, double gamma,
                                 double lambda_buckling, int which_case,
                                 const ConditionReport& cond,
                                 const ConditionReport& hf,
                                 const FunctionalEstimate& i_beta43,
                                 double tol_verdict = default_tol_verdict());

Verdict check_prop21(const FunctionalEstimate& i_est, double lambda, double p,
                     double alpha, const ConditionReport& cond,
                     const ConditionReport& hf,
                     double tol_verdict = default_tol_verdict());

}  // namespace wplab
