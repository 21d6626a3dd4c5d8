#pragma once

#include <array>
#include <vector>

#include "wplab/field.hpp"
#include "wplab/grid.hpp"

namespace wplab {

/// Log-weight f defining the measure e^{-f} dv.
struct WeightSpec {
  enum class Form { zero, linear, quadratic, tabulated };

  Form form = Form::zero;
  std::array<double, 2> a{0.0, 0.0};   // linear: f = a . x
  double c = 0.0;                      // quadratic: f = c |x - x0|^2
  std::array<double, 2> x0{0.0, 0.0};
  std::vector<double> values;          // tabulated: one value per node

  static WeightSpec zero() { return {}; }
  static WeightSpec linear(double ax, double ay = 0.0) {
    WeightSpec s;
    s.form = Form::linear;
    s.a = {ax, ay};
    return s;
  }
  static WeightSpec quadratic(double c, std::array<double, 2> x0 = {0, 0}) {
    WeightSpec s;
    s.form = Form::quadratic;
    s.c = c;
    s.x0 = x0;
    return s;
  }
  static WeightSpec tabulated(std::vector<double> v) {
    WeightSpec s;
    s.form = Form::tabulated;
    s.values = std::move(v);
    return s;
  }
};

/// Node tables of f, grad f, hess f and the measure weights e^{-f} times the
/// quadrature weight. For analytic forms the derivatives are exact; tabulated
/// weights use the same difference stencils as the discrete calculus and are
/// flagged so reports can note the smoothness caveat.
struct WeightField {
  const Grid* grid = nullptr;
  WeightSpec spec;
  ScalarField f;
  VectorField grad_f;
  SymTensorField hess_f;
  Eigen::VectorXd measure_weights;  // e^{-f} * quad weight, all nodes
  bool tabulated = false;

  WeightField(const Grid& g)
      : grid(&g), f(g), grad_f(g), hess_f(g),
        measure_weights(Eigen::VectorXd::Zero(g.num_nodes())) {}

  /// e^{-f} evaluated at an edge midpoint; exact for analytic forms,
  /// arithmetic-mean f for tabulated ones.
  double edge_weight(int node_a, int node_b) const;

  /// f at an arbitrary point (analytic forms only; used for ghost closure).
  double f_at(double x, double y) const;
};

WeightField weight_tables(const WeightSpec& spec, const Grid& grid);

}  // namespace wplab
