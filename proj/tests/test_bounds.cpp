#include <doctest.h>

#include <cmath>

#include "wplab/bounds.hpp"

using namespace wplab;

namespace {
ConditionReport cond(bool ok, const char* name = "curvature") {
  ConditionReport c;
  c.name = name;
  c.satisfied = ok;
  c.min_value = ok ? 1.0 : -1.0;
  return c;
}

FunctionalEstimate estimate(double v, bool divergent = false) {
  FunctionalEstimate e;
  e.value = v;
  e.suspected_divergent = divergent;
  e.refinement_trace = {v};
  return e;
}

const double kPi = 3.14159265358979323846;
}  // namespace

TEST_CASE("two-sided coefficients: headline values") {
  BoundPair b = prop21_bounds(2.0, 2.0);
  CHECK(b.validity == BoundPair::Validity::valid);
  CHECK(b.lower == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(b.upper == doctest::Approx(3.0).epsilon(1e-14));

  // alpha = 2/3 at p = 2: the discriminant vanishes and both roots coincide
  BoundPair c = prop21_bounds(2.0, 2.0 / 3.0);
  CHECK(c.validity == BoundPair::Validity::valid);
  CHECK(c.lower == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(c.upper == doctest::Approx(3.0).epsilon(1e-7));

  BoundPair d = prop21_bounds(4.0, 4.0);
  const double s44 = 4.0 * std::sqrt(44.0);
  CHECK(d.lower == doctest::Approx((30.0 - s44) / 14.0).epsilon(1e-12));
  CHECK(d.upper == doctest::Approx((30.0 + s44) / 14.0).epsilon(1e-12));
}

TEST_CASE("degeneracies carry a validity tag") {
  CHECK(prop21_bounds(3.0, 2.0).validity == BoundPair::Validity::degenerate);
  CHECK(prop21_bounds(2.0, 1.0 + 1e-14).validity ==
        BoundPair::Validity::degenerate);
  // strongly negative alpha - p + 1 drives the discriminant below zero
  BoundPair neg = prop21_bounds(2.0, 0.2);
  CHECK(neg.validity == BoundPair::Validity::complex_discriminant);
  CHECK(prop21_bounds(2.0, 0.2).validity_name() == "complex-discriminant");
  CHECK_THROWS_AS(prop21_bounds(1.0, 2.0), ParameterError);
}

TEST_CASE("roots of the defining quadratic") {
  for (double p : {1.5, 2.0, 3.0, 4.0, 10.0}) {
    for (double alpha : {0.9 * p, p, p + 1.0, 2.0 * (p - 1.0)}) {
      BoundPair b = prop21_bounds(p, alpha);
      if (b.validity != BoundPair::Validity::valid) continue;
      const double d = alpha - p + 1.0;
      const double q = p * p / (2.0 * p - 1.0);
      for (double m : {b.lower, b.upper}) {
        CHECK(std::abs(d * d * m * m - (2.0 * d + q) * m + 1.0) < 1e-10);
      }
    }
  }
}

TEST_CASE("ratio coefficients") {
  BoundPair b = thm11_coefficients(2.0);
  CHECK(b.lower == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-14));

  BoundPair c = thm11_coefficients(4.0);
  CHECK(c.lower == doctest::Approx(0.0495278).epsilon(1e-4));
  CHECK(c.upper == doctest::Approx(0.8076150).epsilon(1e-4));

  // closed form ((p^2+4p-2) -+ p sqrt(p^2+8p-4)) / (2(p+1)(2p-1))
  for (double p : {1.5, 2.0, 3.0, 4.0, 10.0}) {
    const double num = p * p + 4.0 * p - 2.0;
    const double s = p * std::sqrt(p * p + 8.0 * p - 4.0);
    const double den = 2.0 * (p + 1.0) * (2.0 * p - 1.0);
    BoundPair t = thm11_coefficients(p);
    CHECK(t.lower == doctest::Approx((num - s) / den).epsilon(1e-12));
    CHECK(t.upper == doctest::Approx((num + s) / den).epsilon(1e-12));
    // consistency with the alpha = p two-sided bound
    BoundPair r = prop21_bounds(p, p);
    CHECK(t.lower * (p + 1.0) == doctest::Approx(r.lower).epsilon(1e-12));
    CHECK(t.upper * (p + 1.0) == doctest::Approx(r.upper).epsilon(1e-12));
  }

  // the upper coefficient drops below 1 beyond p = 2
  for (double p : {2.5, 3.0, 5.0, 8.0}) {
    CHECK(thm11_coefficients(p).upper < 1.0);
  }
}

TEST_CASE("plate and buckling constants") {
  PlateBucklingConstants k = thm12_constants();
  CHECK(k.case1 == 64.0 / 45.0);
  CHECK(k.case2 == 16.0 / 3.0);
  CHECK(k.prior_buckling == 4.0);
}

TEST_CASE("eigenvalue-ratio verdict") {
  const double l2 = kPi * kPi;
  const double l4 = 0.75 * kPi * kPi * kPi * kPi;  // ratio exactly 3/4
  Verdict ok = check_thm11(l2, l4, 2.0, cond(true, "Ric_f"), cond(true, "H_f"));
  CHECK(ok.outcome == Verdict::Outcome::pass);
  CHECK(ok.hypotheses_satisfied);
  CHECK(ok.lhs == doctest::Approx(0.75));
  CHECK(ok.margin == doctest::Approx(0.25));

  Verdict bad = check_thm11(l2, 1.1 * l2 * l2, 2.0, cond(true), cond(true));
  CHECK(bad.outcome == Verdict::Outcome::fail);
  CHECK(bad.margin == doctest::Approx(-0.1).epsilon(1e-9));

  Verdict gated = check_thm11(l2, 1.1 * l2 * l2, 2.0, cond(true), cond(false));
  CHECK(gated.outcome == Verdict::Outcome::inconclusive);
  CHECK_FALSE(gated.hypotheses_satisfied);
}

TEST_CASE("plate/buckling verdicts, favorable case") {
  const double l = kPi * kPi;
  const double gamma = 500.5639;
  const double buck = 4.0 * kPi * kPi;
  auto vs = check_thm12(l, gamma, buck, 2, cond(true, "Ric_f"),
                        cond(true, "H_f"), estimate(0.0));
  REQUIRE(vs.size() == 2);
  CHECK(vs[0].claim == "thm12.plate");
  CHECK(vs[0].outcome == Verdict::Outcome::pass);
  CHECK(vs[0].lhs == doctest::Approx(5.1388).epsilon(1e-3));
  CHECK(vs[0].rhs == doctest::Approx(16.0 / 3.0));
  CHECK(vs[0].margin == doctest::Approx(0.0365).epsilon(0.02));
  CHECK(vs[1].claim == "thm12.buckling");
  CHECK(vs[1].outcome == Verdict::Outcome::pass);
  CHECK(vs[1].lhs == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("plate/buckling verdicts, contradicted case stays inconclusive") {
  const double l = kPi * kPi;
  auto vs = check_thm12(l, 500.5639, 4.0 * kPi * kPi, 1, cond(true),
                        cond(true), estimate(100.0, true));
  CHECK(vs[0].outcome == Verdict::Outcome::inconclusive);
  CHECK(vs[0].notes.find("numerically contradicted") != std::string::npos);
  bool has_flag = false;
  for (const auto& f : vs[0].flags) has_flag |= f == "suspected-divergent";
  CHECK(has_flag);
  // same data with an unmet curvature hypothesis: plain gating note
  auto gs = check_thm12(l, 500.5639, 4.0 * kPi * kPi, 1, cond(false),
                        cond(true), estimate(100.0, true));
  CHECK(gs[0].outcome == Verdict::Outcome::inconclusive);
  CHECK(gs[0].notes.find("hypotheses not satisfied") != std::string::npos);
  CHECK_THROWS_AS(check_thm12(l, 1.0, 1.0, 3, cond(true), cond(true),
                              estimate(0.0)),
                  ParameterError);
}

TEST_CASE("containment verdict for the integral ratio") {
  Verdict ok = check_prop21(estimate(3.0 * kPi * kPi), kPi * kPi, 2.0, 2.0,
                            cond(true), cond(true));
  CHECK(ok.outcome == Verdict::Outcome::pass);
  CHECK(ok.lhs == doctest::Approx(3.0));  // sits at the upper bound

  Verdict out = check_prop21(estimate(4.0 * kPi * kPi), kPi * kPi, 2.0, 2.0,
                             cond(true), cond(true));
  CHECK(out.outcome == Verdict::Outcome::fail);

  Verdict div = check_prop21(estimate(3.0, true), 1.0, 2.0, 2.0, cond(true),
                             cond(true));
  CHECK(div.outcome == Verdict::Outcome::inconclusive);

  Verdict deg = check_prop21(estimate(3.0), 1.0, 3.0, 2.0, cond(true),
                             cond(true));
  CHECK(deg.outcome == Verdict::Outcome::inconclusive);
  CHECK(deg.notes.find("degenerate") != std::string::npos);

  Verdict gated = check_prop21(estimate(3.0), 1.0, 2.0, 2.0, cond(false),
                               cond(true));
  CHECK(gated.outcome == Verdict::Outcome::inconclusive);
}

TEST_CASE("no pass or fail leaks through unmet hypotheses") {
  for (bool a : {true, false}) {
    for (bool b : {true, false}) {
      Verdict v = check_thm11(1.0, 0.5, 2.0, cond(a), cond(b));
      if (!(a && b)) CHECK(v.outcome == Verdict::Outcome::inconclusive);
    }
  }
}
