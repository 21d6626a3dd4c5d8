#include "wplab/weight.hpp"

#include <cmath>

#include "wplab/operators.hpp"

namespace wplab {

double WeightField::f_at(double x, double y) const {
  switch (spec.form) {
    case WeightSpec::Form::zero:
      return 0.0;
    case WeightSpec::Form::linear:
      return spec.a[0] * x + spec.a[1] * y;
    case WeightSpec::Form::quadratic: {
      const double dx = x - spec.x0[0];
      const double dy = grid->dimension() == 2 ? y - spec.x0[1] : 0.0;
      return spec.c * (dx * dx + dy * dy);
    }
    case WeightSpec::Form::tabulated:
      throw DomainError("tabulated weight has no off-node values");
  }
  return 0.0;
}

double WeightField::edge_weight(int node_a, int node_b) const {
  if (spec.form == WeightSpec::Form::tabulated) {
    return std::exp(-0.5 * (f[node_a] + f[node_b]));
  }
  const auto xa = grid->coord(node_a);
  const auto xb = grid->coord(node_b);
  return std::exp(-f_at(0.5 * (xa[0] + xb[0]), 0.5 * (xa[1] + xb[1])));
}

WeightField weight_tables(const WeightSpec& spec, const Grid& grid) {
  WeightField w(grid);
  w.spec = spec;
  const int n = grid.num_nodes();
  const int dim = grid.dimension();

  switch (spec.form) {
    case WeightSpec::Form::zero:
      break;
    case WeightSpec::Form::linear:
      for (int k = 0; k < n; ++k) {
        const auto x = grid.coord(k);
        w.f[k] = spec.a[0] * x[0] + (dim == 2 ? spec.a[1] * x[1] : 0.0);
        w.grad_f.values(k, 0) = spec.a[0];
        if (dim == 2) w.grad_f.values(k, 1) = spec.a[1];
      }
      break;
    case WeightSpec::Form::quadratic:
      for (int k = 0; k < n; ++k) {
        const auto x = grid.coord(k);
        const double dx = x[0] - spec.x0[0];
        const double dy = dim == 2 ? x[1] - spec.x0[1] : 0.0;
        w.f[k] = spec.c * (dx * dx + dy * dy);
        w.grad_f.values(k, 0) = 2.0 * spec.c * dx;
        w.hess_f.values(k, 0) = 2.0 * spec.c;
        if (dim == 2) {
          w.grad_f.values(k, 1) = 2.0 * spec.c * dy;
          w.hess_f.values(k, 1) = 2.0 * spec.c;
        }
      }
      break;
    case WeightSpec::Form::tabulated: {
      if (static_cast<int>(spec.values.size()) != n) {
        throw ConfigError("tabulated weight must supply a value per node (" +
                          std::to_string(spec.values.size()) + " given, " +
                          std::to_string(n) + " needed)");
      }
      for (int k = 0; k < n; ++k) w.f[k] = spec.values[k];
      w.grad_f = gradient(w.f);
      w.hess_f = hessian(w.f);
      w.tabulated = true;
      break;
    }
  }

  for (int k = 0; k < n; ++k) {
    if (!std::isfinite(w.f[k])) throw ConfigError("non-finite weight value");
    w.measure_weights[k] = std::exp(-w.f[k]) * grid.quad_weight(k);
  }
  return w;
}

}  // namespace wplab
