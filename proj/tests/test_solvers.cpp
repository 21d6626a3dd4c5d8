#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wplab/solvers.hpp"

using namespace wplab;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("oracle self-checks") {
  // shooting integrator against the closed form, independent of the solvers
  CHECK(oracles::lambda_1p_shooting(2.0) ==
        doctest::Approx(kPi * kPi).epsilon(1e-8));
  CHECK(oracles::lambda_1p_shooting(1.5) ==
        doctest::Approx(oracles::lambda_1p_interval(1.5)).epsilon(1e-7));
  CHECK(oracles::lambda_1p_shooting(4.0) ==
        doctest::Approx(oracles::lambda_1p_interval(4.0)).epsilon(1e-7));
  CHECK(oracles::beam_root() == doctest::Approx(4.7300407448627).epsilon(1e-10));
  CHECK(oracles::lambda_1p_interval(1.5) ==
        doctest::Approx(5.318718076).epsilon(1e-8));
  CHECK(oracles::lambda_1p_interval(4.0) ==
        doctest::Approx(0.75 * std::pow(kPi, 4)).epsilon(1e-12));
}

TEST_CASE("string eigenvalue") {
  Grid g(DomainSpec::interval(0.0, 1.0, 512));
  WeightField w = weight_tables(WeightSpec::zero(), g);
  EigenResult r = solve_linear_dirichlet(g, w);
  CHECK(r.converged);
  CHECK(r.lambda == doctest::Approx(kPi * kPi).epsilon(1e-3));
  CHECK(r.residual < 1e-4);
  for (int node : g.interior()) CHECK(r.u.values[node] > 0.0);
}

TEST_CASE("string with drift f = 2x") {
  // closed form: pi^2 + |a|^2/4 with a = 2
  Grid g(DomainSpec::interval(0.0, 1.0, 512));
  WeightField w = weight_tables(WeightSpec::linear(2.0), g);
  EigenResult r = solve_linear_dirichlet(g, w);
  CHECK(r.converged);
  CHECK(r.lambda == doctest::Approx(kPi * kPi + 1.0).epsilon(1e-3));
}

TEST_CASE("square membrane eigenvalue") {
  Grid g(DomainSpec::rectangle(0, 1, 0, 1, 65, 65));
  WeightField w = weight_tables(WeightSpec::zero(), g);
  EigenResult r = solve_linear_dirichlet(g, w);
  CHECK(r.converged);
  CHECK(r.lambda == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-3));
}

TEST_CASE("p = 4 eigenvalue on the interval") {
  Grid g(DomainSpec::interval(0.0, 1.0, 257));
  WeightField w = weight_tables(WeightSpec::zero(), g);
  EigenResult r = solve_plaplacian_dirichlet(g, w, 4.0);
  CHECK(r.converged);
  CHECK(r.lambda ==
        doctest::Approx(oracles::lambda_1p_interval(4.0)).epsilon(0.01));
  CHECK(r.residual < 1e-3);
  // Lp(mu)-unit normalization
  double s = 0.0;
  for (int node : g.interior())
    s += std::pow(std::abs(r.u.values[node]), 4.0) * w.measure_weights[node];
  CHECK(s == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("p = 1.5 eigenvalue on the interval") {
  Grid g(DomainSpec::interval(0.0, 1.0, 257));
  WeightField w = weight_tables(WeightSpec::zero(), g);
  EigenResult r = solve_plaplacian_dirichlet(g, w, 1.5);
  CHECK(r.converged);
  CHECK(r.lambda ==
        doctest::Approx(oracles::lambda_1p_interval(1.5)).epsilon(0.01));
}

TEST_CASE("nonlinear path agrees with the linear solver at p = 2") {
  Grid g(DomainSpec::interval(0.0, 1.0, 129));
  WeightField w = weight_tables(WeightSpec::quadratic(0.8, {0.5, 0.0}), g);
  EigenResult lin = solve_linear_dirichlet(g, w);
  EigenResult nl = solve_plaplacian_dirichlet(g, w, 2.0);
  CHECK(lin.converged);
  CHECK(nl.converged);
  CHECK(nl.lambda == doctest::Approx(lin.lambda).epsilon(1e-7));
}

TEST_CASE("p = 4 on the square converges under refinement") {
  double prev = 0.0;
  for (int n : {17, 33, 65}) {
    Grid g(DomainSpec::rectangle(0, 1, 0, 1, n, n));
    WeightField w = weight_tables(WeightSpec::zero(), g);
    EigenResult r = solve_plaplacian_dirichlet(g, w, 4.0);
    CHECK(r.converged);
    if (prev > 0.0) CHECK(std::abs(r.lambda - prev) / prev < 0.05);
    prev = r.lambda;
  }
}

TEST_CASE("clamped beam eigenvalue") {
  Grid g(DomainSpec::interval(0.0, 1.0, 512));
  WeightField w = weight_tables(WeightSpec::zero(), g);
  EigenResult r = solve_clamped_plate(g, w);
  const double k = oracles::beam_root();
  CHECK(r.converged);
  CHECK(r.lambda == doctest::Approx(k * k * k * k).epsilon(0.01));
}

TEST_CASE("buckling rod eigenvalue") {
  Grid g(DomainSpec::interval(0.0, 1.0, 512));
  WeightField w = weight_tables(WeightSpec::zero(), g);
  EigenResult r = solve_buckling(g, w);
  CHECK(r.converged);
  CHECK(r.lambda == doctest::Approx(4.0 * kPi * kPi).epsilon(0.01));
}

TEST_CASE("plate and buckling on the square, refinement sanity") {
  double prev_plate = 0.0, prev_buck = 0.0;
  for (int n : {17, 33, 65}) {
    Grid g(DomainSpec::rectangle(0, 1, 0, 1, n, n));
    WeightField w = weight_tables(WeightSpec::zero(), g);
    EigenResult pl = solve_clamped_plate(g, w);
    EigenResult bu = solve_buckling(g, w);
    CHECK(pl.converged);
    CHECK(bu.converged);
    CHECK(pl.lambda > 0.0);
    CHECK(bu.lambda > 0.0);
    // plate dominates buckling times the membrane scale
    CHECK(pl.lambda > bu.lambda);
    if (prev_plate > 0.0) {
      CHECK(std::abs(pl.lambda - prev_plate) / prev_plate < 0.05);
      CHECK(std::abs(bu.lambda - prev_buck) / prev_buck < 0.05);
    }
    prev_plate = pl.lambda;
    prev_buck = bu.lambda;
  }
}

TEST_CASE("weighted plate, eigenvalue scales continuously with the weight") {
  Grid g(DomainSpec::interval(0.0, 1.0, 128));
  WeightField w0 = weight_tables(WeightSpec::zero(), g);
  WeightField w1 = weight_tables(WeightSpec::quadratic(0.1, {0.5, 0.0}), g);
  EigenResult a = solve_clamped_plate(g, w0);
  EigenResult b = solve_clamped_plate(g, w1);
  CHECK(a.converged);
  CHECK(b.converged);
  CHECK(std::abs(a.lambda - b.lambda) / a.lambda < 0.2);
}

TEST_CASE("determinism: same seed, same result bits") {
  Grid g(DomainSpec::interval(0.0, 1.0, 65));
  WeightField w = weight_tables(WeightSpec::zero(), g);
  SolverOptions o;
  o.seed = 42;
  EigenResult a = solve_plaplacian_dirichlet(g, w, 3.0, o);
  EigenResult b = solve_plaplacian_dirichlet(g, w, 3.0, o);
  CHECK(a.lambda == b.lambda);
  CHECK((a.u.values - b.u.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("solver rejects p <= 1") {
  Grid g(DomainSpec::interval(0.0, 1.0, 9));
  WeightField w = weight_tables(WeightSpec::zero(), g);
  CHECK_THROWS_AS(solve_plaplacian_dirichlet(g, w, 1.0), ParameterError);
}
