#include "wplab/operators.hpp"

#include <cmath>
#include <vector>

namespace wplab {

namespace {

// Second-order first derivative along one axis; one-sided at the ends.
// stride/count select the axis, base is the first node of the line.
void axis_deriv(const Eigen::VectorXd& u, int base, int stride, int count,
                double h, Eigen::VectorXd& out) {
  auto at = [&](int k) { return u[base + k * stride]; };
  out[base] = (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
  for (int k = 1; k < count - 1; ++k) {
    out[base + k * stride] = (at(k + 1) - at(k - 1)) / (2.0 * h);
  }
  out[base + (count - 1) * stride] =
      (3.0 * at(count - 1) - 4.0 * at(count - 2) + at(count - 3)) / (2.0 * h);
}

// Second-order second derivative along one axis; one-sided at the ends.
void axis_second_deriv(const Eigen::VectorXd& u, int base, int stride,
                       int count, double h, Eigen::VectorXd& out) {
  auto at = [&](int k) { return u[base + k * stride]; };
  const double h2 = h * h;
  out[base] = (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / h2;
  for (int k = 1; k < count - 1; ++k) {
    out[base + k * stride] = (at(k + 1) - 2.0 * at(k) + at(k - 1)) / h2;
  }
  out[base + (count - 1) * stride] =
      (2.0 * at(count - 1) - 5.0 * at(count - 2) + 4.0 * at(count - 3) -
       at(count - 4)) / h2;
}

Eigen::VectorXd deriv_x(const Grid& g, const Eigen::VectorXd& u) {
  Eigen::VectorXd out(u.size());
  for (int j = 0; j < g.ny(); ++j) {
    axis_deriv(u, g.index(0, j), 1, g.nx(), g.hx(), out);
  }
  return out;
}

Eigen::VectorXd deriv_y(const Grid& g, const Eigen::VectorXd& u) {
  Eigen::VectorXd out(u.size());
  for (int i = 0; i < g.nx(); ++i) {
    axis_deriv(u, g.index(i, 0), g.nx(), g.ny(), g.hy(), out);
  }
  return out;
}

}  // namespace

VectorField gradient(const ScalarField& u) {
  const Grid& g = *u.grid;
  if (!u.values.allFinite()) throw DomainError("non-finite field in gradient");
  VectorField out(g);
  out.values.col(0) = deriv_x(g, u.values);
  if (g.dimension() == 2) out.values.col(1) = deriv_y(g, u.values);
  return out;
}

SymTensorField hessian(const ScalarField& u) {
  const Grid& g = *u.grid;
  SymTensorField out(g);
  Eigen::VectorXd tmp(g.num_nodes());
  for (int j = 0; j < g.ny(); ++j) {
    axis_second_deriv(u.values, g.index(0, j), 1, g.nx(), g.hx(), tmp);
  }
  out.values.col(0) = tmp;
  if (g.dimension() == 2) {
    for (int i = 0; i < g.nx(); ++i) {
      axis_second_deriv(u.values, g.index(i, 0), g.nx(), g.ny(), g.hy(), tmp);
    }
    out.values.col(1) = tmp;
    out.values.col(2) = deriv_y(g, deriv_x(g, u.values));
  }
  return out;
}

double integrate_weighted(const ScalarField& g, const WeightField& w) {
  return g.values.dot(w.measure_weights);
}

double integrate_weighted_interior(const ScalarField& g,
                                   const WeightField& w) {
  double sum = 0.0;
  for (int node : g.grid->interior()) {
    sum += g.values[node] * w.measure_weights[node];
  }
  return sum;
}

LinearOperator assemble_laplacian_f(const Grid& grid, const WeightField& w) {
  const int ni = static_cast<int>(grid.interior().size());
  const double vol = grid.cell_volume();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(ni) * 5);

  auto add_edge = [&](int a, int b, double c) {
    const int ia = grid.interior_index(a);
    const int ib = grid.interior_index(b);
    if (ia < 0 && ib < 0) return;
    if (ia >= 0) trip.emplace_back(ia, ia, c);
    if (ib >= 0) trip.emplace_back(ib, ib, c);
    if (ia >= 0 && ib >= 0) {
      trip.emplace_back(ia, ib, -c);
      trip.emplace_back(ib, ia, -c);
    }
  };

  const double cx = vol / (grid.hx() * grid.hx());
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i + 1 < grid.nx(); ++i) {
      const int a = grid.index(i, j), b = grid.index(i + 1, j);
      add_edge(a, b, cx * w.edge_weight(a, b));
    }
  }
  if (grid.dimension() == 2) {
    const double cy = vol / (grid.hy() * grid.hy());
    for (int i = 0; i < grid.nx(); ++i) {
      for (int j = 0; j + 1 < grid.ny(); ++j) {
        const int a = grid.index(i, j), b = grid.index(i, j + 1);
        add_edge(a, b, cy * w.edge_weight(a, b));
      }
    }
  }

  LinearOperator op;
  op.bc = LinearOperator::BC::dirichlet;
  op.grid = &grid;
  op.form.resize(ni, ni);
  op.form.setFromTriplets(trip.begin(), trip.end());
  op.mass.resize(ni);
  for (int k = 0; k < ni; ++k) {
    op.mass[k] = std::exp(-w.f[grid.interior()[k]]) * vol;
  }
  return op;
}

ScalarField apply_p_laplacian(const ScalarField& u, double p,
                              const WeightField& w, double eps) {
  if (p <= 1.0) throw ParameterError("p-Laplacian requires p > 1");
  const Grid& g = *u.grid;
  const double hx = g.hx(), hy = g.hy();
  const int nx = g.nx();
  const double e2 = eps * eps;
  const double q_exp = 0.5 * (p - 2.0);

  // Flux through the edge (a, a+stride); s2 is the squared gradient at the
  // edge midpoint (transverse part averaged from the endpoint centrals).
  auto flux = [&](int a, int stride, double h, bool transverse_y) {
    const int b = a + stride;
    const double d = (u.values[b] - u.values[a]) / h;
    double s2 = d * d;
    if (g.dimension() == 2) {
      double t;
      if (transverse_y) {
        t = ((u.values[a + nx] - u.values[a - nx]) +
             (u.values[b + nx] - u.values[b - nx])) / (4.0 * hy);
      } else {
        t = ((u.values[a + 1] - u.values[a - 1]) +
             (u.values[b + 1] - u.values[b - 1])) / (4.0 * hx);
      }
      s2 += t * t;
    }
    const double q = (p == 2.0 && eps == 0.0)
                         ? 1.0
                         : std::pow(s2 + e2, q_exp);
    return w.edge_weight(a, b) * q * d;
  };

  ScalarField out(g);
  for (int node : g.interior()) {
    double div = (flux(node, 1, hx, true) - flux(node - 1, 1, hx, true)) / hx;
    if (g.dimension() == 2) {
      div += (flux(node, nx, hy, false) - flux(node - nx, nx, hy, false)) / hy;
    }
    out.values[node] = std::exp(w.f[node]) * div;
  }
  return out;
}

ScalarField laplacian_f(const ScalarField& u, const WeightField& w) {
  return apply_p_laplacian(u, 2.0, w, 0.0);
}

LinearOperator assemble_clamped_bilaplacian(const Grid& grid,
                                            const WeightField& w) {
  if (grid.nx() < 8 || (grid.dimension() == 2 && grid.ny() < 8)) {
    throw ConfigError("clamped bilaplacian needs >= 8 nodes per axis");
  }
  const int n_all = grid.num_nodes();
  const int ni = static_cast<int>(grid.interior().size());
  const double vol = grid.cell_volume();

  // All-node stiffness S: u^T S v = sum_e c_e (du)(dv).
  std::vector<Eigen::Triplet<double>> strip;
  auto add_edge = [&](int a, int b, double c) {
    strip.emplace_back(a, a, c);
    strip.emplace_back(b, b, c);
    strip.emplace_back(a, b, -c);
    strip.emplace_back(b, a, -c);
  };
  const double cx = vol / (grid.hx() * grid.hx());
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i + 1 < grid.nx(); ++i) {
      const int a = grid.index(i, j), b = grid.index(i + 1, j);
      add_edge(a, b, cx * w.edge_weight(a, b));
    }
  }
  const double cy = vol / (grid.hy() * grid.hy());
  if (grid.dimension() == 2) {
    for (int i = 0; i < grid.nx(); ++i) {
      for (int j = 0; j + 1 < grid.ny(); ++j) {
        const int a = grid.index(i, j), b = grid.index(i, j + 1);
        add_edge(a, b, cy * w.edge_weight(a, b));
      }
    }
  }
  SpMat S(n_all, n_all);
  S.setFromTriplets(strip.begin(), strip.end());

  // Zero-padding injection interior -> all nodes.
  std::vector<Eigen::Triplet<double>> ztrip;
  for (int k = 0; k < ni; ++k) ztrip.emplace_back(grid.interior()[k], k, 1.0);
  SpMat Z(n_all, ni);
  Z.setFromTriplets(ztrip.begin(), ztrip.end());

  // Ghost closure: reflection u_ghost = u_inward enforces du/dnu = 0, with
  // the outside edge weight mirrored from the inward edge.
  std::vector<Eigen::Triplet<double>> ctrip;
  for (const BoundaryNode& b : grid.boundary()) {
    if (b.corner) continue;
    const int di = -static_cast<int>(b.normal[0]);
    const int dj = -static_cast<int>(b.normal[1]);
    const int inward =
        grid.index(grid.ix(b.node) + di, grid.iy(b.node) + dj);
    const int col = grid.interior_index(inward);
    if (col < 0) continue;  // nodes hugging a corner in very coarse grids
    const double c = (di != 0 ? cx : cy) * w.edge_weight(b.node, inward);
    ctrip.emplace_back(b.node, col, -c);
  }
  SpMat C(n_all, ni);
  C.setFromTriplets(ctrip.begin(), ctrip.end());

  Eigen::VectorXd inv_mass_all(n_all);
  for (int k = 0; k < n_all; ++k) {
    inv_mass_all[k] = std::exp(w.f[k]) / vol;
  }

  SpMat right = S * Z + C;
  SpMat mid = inv_mass_all.asDiagonal() * right;
  SpMat A = SpMat(Z.transpose()) * SpMat(S * mid);
  SpMat At = SpMat(A.transpose());
  A = 0.5 * (A + At);  // roundoff-level defect only; see tests

  LinearOperator op;
  op.bc = LinearOperator::BC::clamped;
  op.grid = &grid;
  op.form = std::move(A);
  op.mass.resize(ni);
  for (int k = 0; k < ni; ++k) {
    op.mass[k] = std::exp(-w.f[grid.interior()[k]]) * vol;
  }
  return op;
}

Eigen::VectorXd LinearOperator::restrict_interior(const ScalarField& u) const {
  const auto& interior = grid->interior();
  Eigen::VectorXd out(interior.size());
  for (size_t k = 0; k < interior.size(); ++k) out[k] = u.values[interior[k]];
  return out;
}

ScalarField LinearOperator::extend_zero(const Eigen::VectorXd& ui) const {
  ScalarField out(*grid);
  const auto& interior = grid->interior();
  for (size_t k = 0; k < interior.size(); ++k) out.values[interior[k]] = ui[k];
  return out;
}

ScalarField LinearOperator::apply(const ScalarField& u,
                                  const WeightField& w) const {
  if (bc == BC::dirichlet) {
    ScalarField lap = apply_p_laplacian(u, 2.0, w, 0.0);
    lap.values = -lap.values;
    return lap;
  }
  Eigen::VectorXd r = form * restrict_interior(u);
  ScalarField out(*grid);
  const auto& interior = grid->interior();
  for (size_t k = 0; k < interior.size(); ++k) {
    out.values[interior[k]] = r[k] / mass[k];
  }
  return out;
}

double default_regularization(double p, double gradient_scale) {
  return p >= 2.0 ? 0.0 : 1e-8 * gradient_scale;
}

}  // namespace wplab
