#include "wplab/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace wplab {

FunctionalEstimate make_functional_estimate(std::vector<double> trace) {
  FunctionalEstimate est;
  if (trace.empty()) throw DomainError("empty refinement trace");
  est.value = trace.back();
  if (trace.size() >= 2) {
    bool growing = true;
    for (size_t k = 0; k + 1 < trace.size(); ++k) {
      if (!(trace[k + 1] > 1.2 * trace[k])) {
        growing = false;
        break;
      }
    }
    est.suspected_divergent = growing;
  }
  est.refinement_trace = std::move(trace);
  return est;
}

double i_functional_value(const ScalarField& u, double p, double alpha,
                          const WeightField& w) {
  if (p <= 1.0) throw ParameterError("I_{p,alpha} requires p > 1");
  const Grid& grid = *u.grid;
  const VectorField g = gradient(u);
  double num = 0.0, den = 0.0;
  for (int node : grid.interior()) {
    const double uv = u.values[node];
    if (!(uv > 0.0)) {
      throw DomainError("I_{p,alpha} needs u > 0 on the interior");
    }
    const double gn = g.norm_at(node);
    const double mw = w.measure_weights[node];
    num += mw * std::pow(uv, alpha - p) * std::pow(gn, 2.0 * p);
    den += mw * std::pow(uv, alpha) * std::pow(gn, p);
  }
  if (den == 0.0) throw DomainError("I_{p,alpha}: zero denominator");
  return num / den;
}

FunctionalEstimate i_functional(const ScalarField& u, double p, double alpha,
                                const WeightField& w) {
  return make_functional_estimate({i_functional_value(u, p, alpha, w)});
}

double identity_residual(const ScalarField& u, double lambda, double p,
                         double alpha, const WeightField& w) {
  if (alpha <= 0.0) throw ParameterError("identity residual requires alpha > 0");
  const Grid& grid = *u.grid;
  const VectorField g = gradient(u);
  double lhs = 0.0, mass = 0.0;
  for (int node : grid.interior()) {
    const double uv = std::abs(u.values[node]);
    const double mw = w.measure_weights[node];
    lhs += mw * std::pow(uv, alpha) * std::pow(g.norm_at(node), p);
    mass += mw * std::pow(uv, alpha + p);
  }
  const double rhs = lambda / (alpha + 1.0) * mass;
  if (rhs == 0.0) throw DomainError("identity residual: zero right-hand side");
  return std::abs(lhs - rhs) / rhs;
}

ScalarField power_test_function(const ScalarField& u, double beta) {
  if (beta <= 1.0) {
    throw ParameterError(
        "power test function needs beta > 1 (clamped admissibility "
        "d(phi)/dnu = 0 fails at beta = 1)");
  }
  ScalarField phi(*u.grid);
  for (int k = 0; k < u.values.size(); ++k) {
    const double uv = u.values[k];
    if (uv < 0.0) throw DomainError("power test function needs u >= 0");
    phi.values[k] = std::pow(uv, beta);
  }
  // exact clamped trace: roundoff-sized boundary values of u would otherwise
  // survive the power
  for (const BoundaryNode& b : u.grid->boundary()) phi.values[b.node] = 0.0;
  return phi;
}

namespace {

void require_clamped_trace(const ScalarField& phi) {
  const Grid& grid = *phi.grid;
  double scale = phi.values.cwiseAbs().maxCoeff();
  for (const BoundaryNode& b : grid.boundary()) {
    if (std::abs(phi.values[b.node]) > 1e-12 * std::max(1.0, scale)) {
      throw DomainError("trial function does not vanish on the boundary");
    }
  }
}

// int (Delta_f phi)^2 dmu over all nodes. The Laplacian comes from the
// hessian/gradient tables rather than the flux operator so that boundary
// nodes, where Delta phi need not vanish, enter the quadrature; dropping
// them costs a full order of accuracy.
double plate_numerator(const ScalarField& phi, const WeightField& w) {
  const Grid& grid = *phi.grid;
  const SymTensorField hess = hessian(phi);
  const VectorField grad = gradient(phi);
  double num = 0.0;
  for (int node = 0; node < grid.num_nodes(); ++node) {
    double lap = hess.xx(node);
    if (grid.dimension() == 2) lap += hess.yy(node);
    lap -= w.grad_f.values.row(node).dot(grad.values.row(node));
    num += w.measure_weights[node] * lap * lap;
  }
  return num;
}

}  // namespace

double plate_quotient_value(const ScalarField& phi, const WeightField& w) {
  require_clamped_trace(phi);
  double den = 0.0;
  for (int node : phi.grid->interior()) {
    den += w.measure_weights[node] * phi.values[node] * phi.values[node];
  }
  if (den == 0.0) throw DomainError("plate quotient: zero denominator");
  return plate_numerator(phi, w) / den;
}

double buckling_quotient_value(const ScalarField& phi, const WeightField& w) {
  require_clamped_trace(phi);
  // Dirichlet energy through the stiffness form; integration by parts is
  // exact for fields vanishing on the boundary.
  const ScalarField lap = laplacian_f(phi, w);
  double den = 0.0;
  for (int node : phi.grid->interior()) {
    den += -w.measure_weights[node] * lap.values[node] * phi.values[node];
  }
  if (den <= 0.0) throw DomainError("buckling quotient: zero denominator");
  return plate_numerator(phi, w) / den;
}

FunctionalEstimate plate_quotient(const ScalarField& phi,
                                  const WeightField& w) {
  return make_functional_estimate({plate_quotient_value(phi, w)});
}

FunctionalEstimate buckling_quotient(const ScalarField& phi,
                                     const WeightField& w) {
  return make_functional_estimate({buckling_quotient_value(phi, w)});
}

ConditionReport curvature_condition(const std::optional<ScalarField>& u,
                                    const WeightField& w, double c,
                                    double tol_cond) {
  const Grid& grid = *w.grid;
  ConditionReport rep;
  rep.name = "curvature";
  rep.tol_cond = tol_cond;
  rep.min_value = std::numeric_limits<double>::infinity();

  std::optional<SymTensorField> hess_u;
  if (u && c != 0.0) hess_u = hessian(*u);

  for (int node : grid.interior()) {
    double xx = w.hess_f.xx(node);
    double yy = w.hess_f.yy(node);
    double xy = w.hess_f.xy(node);
    if (hess_u) {
      const double uv = u->values[node];
      if (!(uv > 0.0)) {
        throw DomainError("curvature condition: u <= 0 at an interior node");
      }
      xx += c * hess_u->xx(node) / uv;
      yy += c * hess_u->yy(node) / uv;
      xy += c * hess_u->xy(node) / uv;
    }
    double min_eig;
    if (grid.dimension() == 1) {
      min_eig = xx;
    } else {
      const double disc = std::sqrt((xx - yy) * (xx - yy) + 4.0 * xy * xy);
      min_eig = 0.5 * (xx + yy - disc);
    }
    if (min_eig < rep.min_value) {
      rep.min_value = min_eig;
      rep.location = node;
    }
  }
  rep.satisfied = rep.min_value >= -tol_cond;
  return rep;
}

ConditionReport hf_boundary(const WeightField& w, const Grid& grid,
                            double tol_cond) {
  ConditionReport rep;
  rep.name = "H_f";
  rep.tol_cond = tol_cond;
  rep.min_value = std::numeric_limits<double>::infinity();
  for (const BoundaryNode& b : grid.boundary()) {
    if (b.corner) continue;
    const double hf = -(w.grad_f.values(b.node, 0) * b.normal[0] +
                        w.grad_f.values(b.node, 1) * b.normal[1]);
    if (hf < rep.min_value) {
      rep.min_value = hf;
      rep.location = b.node;
    }
  }
  rep.satisfied = rep.min_value >= -tol_cond;
  return rep;
}

BochnerResult bochner_residual(const ScalarField& u, const WeightField& w,
                               double p) {
  if (p <= 1.0) throw ParameterError("Bochner residual requires p > 1");
  const Grid& grid = *u.grid;
  const VectorField g = gradient(u);
  const SymTensorField hu = hessian(u);

  ScalarField speed(grid);   // |grad u|
  ScalarField speed_p(grid); // |grad u|^p
  double max_speed = 0.0;
  for (int k = 0; k < grid.num_nodes(); ++k) {
    speed.values[k] = g.norm_at(k);
    speed_p.values[k] = std::pow(speed.values[k], p);
    max_speed = std::max(max_speed, speed.values[k]);
  }
  const double delta = 1e-6 * max_speed;

  const ScalarField t1 = apply_p_laplacian(speed_p, p, w, 0.0);
  const ScalarField plap_u = apply_p_laplacian(u, p, w, 0.0);
  const VectorField grad_speed = gradient(speed);
  const VectorField grad_plap = gradient(plap_u);

  BochnerResult out;
  out.residual = ScalarField(grid);
  for (int node : grid.interior()) {
    if (grid.interior_depth(node) < 2) continue;
    const double s = speed.values[node];
    if (s < delta) continue;
    const Eigen::Vector2d gu = g.values.row(node).transpose();
    const Eigen::Vector2d gs = grad_speed.values.row(node).transpose();
    const double gugs = gu.dot(gs);
    const double hess_a = hu.frobenius_sq(node) +
                          2.0 * (p - 2.0) * gs.squaredNorm() +
                          (p - 2.0) * (p - 2.0) * gugs * gugs / (s * s);
    const double ricci = w.hess_f.form(node, gu);
    const double t2 = std::pow(s, 2.0 * p - 4.0) * (hess_a + ricci);
    const double t3 = std::pow(s, p - 2.0) *
                      gu.dot(grad_plap.values.row(node).transpose());
    const double r = (p - 1.0) / p * t1.values[node] - t2 - t3;
    out.residual.values[node] = r;
    out.evaluated.push_back(node);
    out.sup_norm = std::max(out.sup_norm, std::abs(r));
  }
  if (out.evaluated.empty()) {
    throw DomainError("Bochner residual: empty evaluation set");
  }
  return out;
}

double boundary_normal_gradient_identity(const ScalarField& u,
                                         const WeightField& w,
                                         const Grid& grid) {
  const VectorField g = gradient(u);
  ScalarField g2(grid);
  for (int k = 0; k < grid.num_nodes(); ++k) {
    g2.values[k] = g.squared_norm_at(k);
  }
  double max_res = 0.0, max_g2 = 0.0;
  for (const BoundaryNode& b : grid.boundary()) {
    if (b.corner) continue;
    // Second-order one-sided derivative of |grad u|^2 along the inward axis,
    // negated to point along nu.
    const int di = -static_cast<int>(b.normal[0]);
    const int dj = -static_cast<int>(b.normal[1]);
    const int stride = di != 0 ? di : dj * grid.nx();
    const double h = di != 0 ? grid.hx() : grid.hy();
    const int n0 = b.node;
    const double inward =
        (-3.0 * g2.values[n0] + 4.0 * g2.values[n0 + stride] -
         g2.values[n0 + 2 * stride]) / (2.0 * h);
    const double dnu = -inward;
    const double hf = -(w.grad_f.values(n0, 0) * b.normal[0] +
                        w.grad_f.values(n0, 1) * b.normal[1]);
    max_res = std::max(max_res, std::abs(0.5 * dnu + hf * g2.values[n0]));
    max_g2 = std::max(max_g2, g2.values[n0]);
  }
  return max_g2 > 0.0 ? max_res / max_g2 : 0.0;
}

}  // namespace wplab
