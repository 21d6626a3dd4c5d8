#include <doctest.h>

#include <cmath>

#include "wplab/functionals.hpp"
#include "wplab/solvers.hpp"

using namespace wplab;

namespace {
const double kPi = 3.14159265358979323846;

ScalarField sine_mode(const Grid& g) {
  return ScalarField::from_function(
      g, [](double x, double) { return std::sin(kPi * x); });
}
}  // namespace

TEST_CASE("divergence detector") {
  FunctionalEstimate flat = make_functional_estimate({2.0, 2.01, 2.001});
  CHECK_FALSE(flat.suspected_divergent);
  CHECK(flat.value == doctest::Approx(2.001));
  CHECK(flat.flag() == "convergent");

  FunctionalEstimate grow = make_functional_estimate({1.0, 1.35, 1.9, 2.7});
  CHECK(grow.suspected_divergent);
  CHECK(grow.flag() == "suspected-divergent");

  // growth must be sustained on every step to count as divergence
  FunctionalEstimate mixed = make_functional_estimate({1.0, 1.5, 1.6});
  CHECK_FALSE(mixed.suspected_divergent);

  CHECK_FALSE(make_functional_estimate({5.0}).suspected_divergent);
  CHECK_THROWS_AS(make_functional_estimate({}), DomainError);
}

TEST_CASE("I_{2,2} of the sine is 3 pi^2") {
  Grid g(DomainSpec::interval(0.0, 1.0, 401));
  WeightField w = weight_tables(WeightSpec::zero(), g);
  ScalarField u = sine_mode(g);
  const double v = i_functional_value(u, 2.0, 2.0, w);
  CHECK(v == doctest::Approx(3.0 * kPi * kPi).epsilon(0.01));
}

TEST_CASE("I rejects bad inputs") {
  Grid g(DomainSpec::interval(0.0, 1.0, 33));
  WeightField w = weight_tables(WeightSpec::zero(), g);
  ScalarField u = sine_mode(g);
  CHECK_THROWS_AS(i_functional_value(u, 1.0, 2.0, w), ParameterError);
  ScalarField neg = u;
  neg.values[10] = -0.1;
  CHECK_THROWS_AS(i_functional_value(neg, 2.0, 2.0, w), DomainError);
}

TEST_CASE("I_{2,2/3} grows under refinement on the interval") {
  std::vector<double> trace;
  for (int n : {65, 129, 257}) {
    Grid g(DomainSpec::interval(0.0, 1.0, n));
    WeightField w = weight_tables(WeightSpec::zero(), g);
    trace.push_back(i_functional_value(sine_mode(g), 2.0, 2.0 / 3.0, w));
  }
  FunctionalEstimate est = make_functional_estimate(trace);
  CHECK(est.suspected_divergent);
}

TEST_CASE("alpha-energy identity holds for computed eigenpairs") {
  Grid g(DomainSpec::interval(0.0, 1.0, 257));
  WeightField w = weight_tables(WeightSpec::linear(1.0), g);
  EigenResult r = solve_linear_dirichlet(g, w);
  REQUIRE(r.converged);
  for (double alpha : {1.0, 2.0, 3.0}) {
    CHECK(identity_residual(r.u, r.lambda, 2.0, alpha, w) < 5e-3);
  }
  CHECK_THROWS_AS(identity_residual(r.u, r.lambda, 2.0, 0.0, w),
                  ParameterError);
}

TEST_CASE("identity residual shrinks at second order") {
  std::vector<double> res;
  for (int n : {65, 129, 257}) {
    Grid g(DomainSpec::interval(0.0, 1.0, n));
    WeightField w = weight_tables(WeightSpec::zero(), g);
    EigenResult r = solve_linear_dirichlet(g, w);
    REQUIRE(r.converged);
    res.push_back(identity_residual(r.u, r.lambda, 2.0, 2.0, w));
  }
  CHECK(res[0] / res[1] == doctest::Approx(4.0).epsilon(0.3));
  CHECK(res[1] / res[2] == doctest::Approx(4.0).epsilon(0.3));
}

TEST_CASE("power test function") {
  Grid g(DomainSpec::interval(0.0, 1.0, 129));
  ScalarField u = sine_mode(g);
  CHECK_THROWS_AS(power_test_function(u, 1.0), ParameterError);
  CHECK_THROWS_AS(power_test_function(u, 0.5), ParameterError);
  ScalarField phi = power_test_function(u, 4.0 / 3.0);
  CHECK(phi.values[0] == 0.0);
  CHECK(phi.values[g.num_nodes() - 1] == 0.0);
  const int mid = g.num_nodes() / 2;
  CHECK(phi.values[mid] ==
        doctest::Approx(std::pow(u.values[mid], 4.0 / 3.0)));
}

TEST_CASE("plate quotient of x^2(1-x)^2 approaches 504") {
  Grid g(DomainSpec::interval(0.0, 1.0, 257));
  WeightField w = weight_tables(WeightSpec::zero(), g);
  auto phi = ScalarField::from_function(g, [](double x, double) {
    return x * x * (1.0 - x) * (1.0 - x);
  });
  CHECK(plate_quotient_value(phi, w) == doctest::Approx(504.0).epsilon(0.01));
  CHECK(buckling_quotient_value(phi, w) > 0.0);
  // trial fields must vanish on the boundary
  ScalarField bad = phi;
  bad.values[0] = 0.3;
  CHECK_THROWS_AS(plate_quotient_value(bad, w), DomainError);
}

TEST_CASE("curvature condition on analytic weights") {
  Grid g(DomainSpec::interval(0.0, 1.0, 65));
  WeightField wq = weight_tables(WeightSpec::quadratic(1.0, {0.5, 0.0}), g);
  ConditionReport pos = curvature_condition(std::nullopt, wq, 0.0);
  CHECK(pos.satisfied);
  CHECK(pos.min_value == doctest::Approx(2.0));

  WeightField wn = weight_tables(WeightSpec::quadratic(-1.0, {0.5, 0.0}), g);
  ConditionReport neg = curvature_condition(std::nullopt, wn, 0.0);
  CHECK_FALSE(neg.satisfied);
  CHECK(neg.min_value == doctest::Approx(-2.0));
}

TEST_CASE("curvature condition with the eigenfunction term") {
  // f = 0, c < 0: -c u''/u = |c| lambda-like > 0, satisfied;
  // c > 0 fails for a concave positive mode
  Grid g(DomainSpec::interval(0.0, 1.0, 129));
  WeightField w = weight_tables(WeightSpec::zero(), g);
  ScalarField u = sine_mode(g);
  ConditionReport ok = curvature_condition(u, w, -4.0 / 3.0);
  CHECK(ok.satisfied);
  CHECK(ok.min_value == doctest::Approx(4.0 / 3.0 * kPi * kPi).epsilon(1e-3));
  ConditionReport bad = curvature_condition(u, w, 0.5);
  CHECK_FALSE(bad.satisfied);
}

TEST_CASE("boundary f-mean curvature") {
  Grid g(DomainSpec::interval(0.0, 1.0, 65));
  // f = |x - 1/2|^2: outward slope at both ends, H_f = -1
  ConditionReport a =
      hf_boundary(weight_tables(WeightSpec::quadratic(1.0, {0.5, 0.0}), g), g);
  CHECK_FALSE(a.satisfied);
  CHECK(a.min_value == doctest::Approx(-1.0));
  ConditionReport b = hf_boundary(
      weight_tables(WeightSpec::quadratic(-1.0, {0.5, 0.0}), g), g);
  CHECK(b.satisfied);
  CHECK(b.min_value == doctest::Approx(1.0));
  ConditionReport c =
      hf_boundary(weight_tables(WeightSpec::zero(), g), g);
  CHECK(c.satisfied);
  CHECK(c.min_value == doctest::Approx(0.0));
}

TEST_CASE("Bochner residual vanishes for quadratic fields") {
  Grid g(DomainSpec::rectangle(0, 1, 0, 1, 17, 17));
  WeightField w = weight_tables(WeightSpec::zero(), g);
  auto u = ScalarField::from_function(
      g, [](double x, double y) { return x * (1.0 - x) + 0.5 * y * (1.0 - y); });
  BochnerResult b = bochner_residual(u, w, 2.0);
  CHECK_FALSE(b.evaluated.empty());
  CHECK(b.sup_norm <= 1e-10);
}

TEST_CASE("Bochner residual shrinks under refinement for the sine") {
  std::vector<double> sup;
  for (int n : {33, 65, 129}) {
    Grid g(DomainSpec::interval(0.0, 1.0, n));
    WeightField w = weight_tables(WeightSpec::zero(), g);
    sup.push_back(bochner_residual(sine_mode(g), w, 2.0).sup_norm);
  }
  CHECK(sup[1] < sup[0]);
  CHECK(sup[2] < sup[1]);
}

TEST_CASE("boundary normal-gradient identity for the string mode") {
  Grid g(DomainSpec::interval(0.0, 1.0, 257));
  WeightField w = weight_tables(WeightSpec::zero(), g);
  EigenResult r = solve_linear_dirichlet(g, w);
  REQUIRE(r.converged);
  CHECK(boundary_normal_gradient_identity(r.u, w, g) < 0.05);
}
