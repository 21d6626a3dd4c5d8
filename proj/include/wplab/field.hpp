#pragma once

#include <Eigen/Dense>
#include <functional>

#include "wplab/grid.hpp"

namespace wplab {

/// Node-valued scalar function on a Grid.
struct ScalarField {
  const Grid* grid = nullptr;
  Eigen::VectorXd values;

  ScalarField() = default;
  explicit ScalarField(const Grid& g)
      : grid(&g), values(Eigen::VectorXd::Zero(g.num_nodes())) {}

  double operator[](int node) const { return values[node]; }
  double& operator[](int node) { return values[node]; }

  static ScalarField from_function(
      const Grid& g, const std::function<double(double, double)>& fn) {
    ScalarField u(g);
    for (int n = 0; n < g.num_nodes(); ++n) {
      auto x = g.coord(n);
      u.values[n] = fn(x[0], x[1]);
    }
    return u;
  }
};

/// Node table of (d/dx, d/dy) values; the y column is zero in 1D.
struct VectorField {
  const Grid* grid = nullptr;
  Eigen::MatrixX2d values;

  explicit VectorField(const Grid& g)
      : grid(&g), values(Eigen::MatrixX2d::Zero(g.num_nodes(), 2)) {}

  double norm_at(int node) const { return values.row(node).norm(); }
  double squared_norm_at(int node) const {
    return values.row(node).squaredNorm();
  }
};

/// Node table of symmetric 2x2 matrices stored as (xx, yy, xy).
struct SymTensorField {
  const Grid* grid = nullptr;
  Eigen::MatrixX3d values;

  explicit SymTensorField(const Grid& g)
      : grid(&g), values(Eigen::MatrixX3d::Zero(g.num_nodes(), 3)) {}

  double xx(int node) const { return values(node, 0); }
  double yy(int node) const { return values(node, 1); }
  double xy(int node) const { return values(node, 2); }

  double frobenius_sq(int node) const {
    return xx(node) * xx(node) + yy(node) * yy(node) +
           2.0 * xy(node) * xy(node);
  }

  /// Quadratic form v^T H v.
  double form(int node, const Eigen::Vector2d& v) const {
    return xx(node) * v[0] * v[0] + yy(node) * v[1] * v[1] +
           2.0 * xy(node) * v[0] * v[1];
  }

  /// Smallest eigenvalue; in 1D this is just the xx entry.
  double min_eigenvalue(int node, int dim) const {
    if (dim == 1) return xx(node);
    const double a = xx(node), b = yy(node), c = xy(node);
    const double tr = a + b;
    const double disc = std::sqrt((a - b) * (a - b) + 4.0 * c * c);
    return 0.5 * (tr - disc);
  }
};

}  // namespace wplab
