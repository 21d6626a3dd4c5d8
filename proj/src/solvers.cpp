#include "wplab/solvers.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <random>

namespace wplab {

namespace {

Eigen::VectorXd interior_masses(const Grid& grid, const WeightField& w) {
  const auto& interior = grid.interior();
  Eigen::VectorXd m(interior.size());
  for (size_t k = 0; k < interior.size(); ++k) {
    m[k] = w.measure_weights[interior[k]];
  }
  return m;
}

double lp_norm(const Eigen::VectorXd& m, const Eigen::VectorXd& u, double p) {
  double s = 0.0;
  for (int i = 0; i < u.size(); ++i) s += m[i] * std::pow(std::abs(u[i]), p);
  return std::pow(s, 1.0 / p);
}

struct PencilOut {
  Eigen::VectorXd u;
  double lambda = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Inverse power iteration for the smallest eigenvalue of A u = lambda B u,
// A and B symmetric positive definite. The Rayleigh quotient sequence is
// non-increasing; a seeded random restart guards against stagnation.
PencilOut smallest_pencil_eigenpair(const SpMat& A, const SpMat& B,
                                    const SolverOptions& opts) {
  Eigen::SimplicialLDLT<SpMat> solver;
  solver.compute(A);
  if (solver.info() != Eigen::Success) {
    throw DomainError("operator factorization failed");
  }

  const int n = static_cast<int>(A.rows());
  Eigen::VectorXd u = Eigen::VectorXd::Ones(n);
  auto b_norm = [&](const Eigen::VectorXd& v) {
    return std::sqrt(v.dot(B * v));
  };
  u /= b_norm(u);

  PencilOut out;
  double lambda_prev = -1.0;
  bool restarted = false;
  for (int it = 1; it <= opts.max_outer; ++it) {
    Eigen::VectorXd v = solver.solve(B * u);
    const double lambda = v.dot(A * v) / v.dot(B * v);
    v /= b_norm(v);
    u = v;
    out.iterations = it;
    if (lambda_prev > 0.0 &&
        std::abs(lambda - lambda_prev) <= opts.tol * std::abs(lambda)) {
      out.lambda = lambda;
      out.converged = true;
      break;
    }
    out.lambda = lambda;
    lambda_prev = lambda;
    if (!restarted && it == opts.max_outer / 2) {
      restarted = true;
      std::mt19937_64 rng(opts.seed);
      std::uniform_real_distribution<double> dist(0.5, 1.5);
      for (int i = 0; i < n; ++i) u[i] *= dist(rng);
      u /= b_norm(u);
      lambda_prev = -1.0;
    }
  }
  out.u = u;
  const Eigen::VectorXd r = A * u - out.lambda * (B * u);
  out.residual = r.norm() / (std::abs(out.lambda) * (B * u).norm());
  return out;
}

SpMat diagonal_matrix(const Eigen::VectorXd& d) {
  SpMat M(d.size(), d.size());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(d.size());
  for (int i = 0; i < d.size(); ++i) trip.emplace_back(i, i, d[i]);
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

void fix_sign(const Grid& grid, ScalarField& u) {
  double mean = 0.0;
  for (int node : grid.interior()) mean += u.values[node];
  if (mean < 0.0) u.values = -u.values;
}

void require_interior_positive(const Grid& grid, const ScalarField& u,
                               const char* what) {
  for (int node : grid.interior()) {
    if (!(u.values[node] > 0.0)) {
      throw DomainError(std::string(what) +
                        ": first eigenfunction not positive at an interior "
                        "node");
    }
  }
}

}  // namespace

double p_rayleigh_quotient(const ScalarField& u, double p,
                           const WeightField& w, double eps) {
  const Grid& grid = *u.grid;
  const ScalarField neg = apply_p_laplacian(u, p, w, eps);
  double num = 0.0, den = 0.0;
  for (int node : grid.interior()) {
    num += -neg.values[node] * u.values[node] * w.measure_weights[node];
    den += std::pow(std::abs(u.values[node]), p) * w.measure_weights[node];
  }
  if (den == 0.0) throw DomainError("Rayleigh quotient of the zero field");
  return num / den;
}

EigenResult solve_linear_dirichlet(const Grid& grid, const WeightField& w,
                                   const SolverOptions& opts) {
  const LinearOperator op = assemble_laplacian_f(grid, w);
  PencilOut p = smallest_pencil_eigenpair(op.form, diagonal_matrix(op.mass),
                                          opts);
  EigenResult res;
  res.lambda = p.lambda;
  res.residual = p.residual;
  res.iterations = p.iterations;
  res.converged = p.converged;
  res.u = op.extend_zero(p.u);
  fix_sign(grid, res.u);
  if (res.converged) require_interior_positive(grid, res.u, "linear solve");
  return res;
}

EigenResult solve_clamped_plate(const Grid& grid, const WeightField& w,
                                const SolverOptions& opts) {
  const LinearOperator op = assemble_clamped_bilaplacian(grid, w);
  PencilOut p = smallest_pencil_eigenpair(op.form, diagonal_matrix(op.mass),
                                          opts);
  EigenResult res;
  res.lambda = p.lambda;
  res.residual = p.residual;
  res.iterations = p.iterations;
  res.converged = p.converged;
  res.u = op.extend_zero(p.u);
  fix_sign(grid, res.u);
  return res;
}

EigenResult solve_buckling(const Grid& grid, const WeightField& w,
                           const SolverOptions& opts) {
  const LinearOperator plate = assemble_clamped_bilaplacian(grid, w);
  const LinearOperator lap = assemble_laplacian_f(grid, w);
  PencilOut p = smallest_pencil_eigenpair(plate.form, lap.form, opts);
  EigenResult res;
  res.lambda = p.lambda;
  res.residual = p.residual;
  res.iterations = p.iterations;
  res.converged = p.converged;
  res.u = plate.extend_zero(p.u);
  fix_sign(grid, res.u);
  // Re-normalize in L2(mu) for reporting; eigenvalues are scale invariant.
  const Eigen::VectorXd m = interior_masses(grid, w);
  res.u.values /= lp_norm(m, plate.restrict_interior(res.u), 2.0);
  return res;
}

namespace {

// Inner convex problem of the p-Laplacian iteration:
//   min_v  (1/p) sum_e vol w_e (d_e^2 + eps^2)^{p/2}  -  b . v
// over interior values (1D). Damped Newton with Armijo line search on the
// energy; falls back to gradient steps with backtracking if a Newton step
// fails.
struct Inner1D {
  const Grid& grid;
  const WeightField& w;
  double p, eps;
  Eigen::VectorXd edge_weights;  // vol * w_e per edge, n-1 edges

  Inner1D(const Grid& g, const WeightField& wf, double p_, double eps_)
      : grid(g), w(wf), p(p_), eps(eps_) {
    const int ne = g.nx() - 1;
    edge_weights.resize(ne);
    for (int e = 0; e < ne; ++e) {
      edge_weights[e] = g.cell_volume() * w.edge_weight(e, e + 1);
    }
  }

  double energy(const Eigen::VectorXd& v) const {
    const double h = grid.hx();
    double E = 0.0;
    double prev = 0.0;
    for (int e = 0; e < edge_weights.size(); ++e) {
      const double next = e + 1 < grid.nx() - 1 ? v[e] : 0.0;
      const double d = (next - prev) / h;
      E += edge_weights[e] * std::pow(d * d + eps * eps, 0.5 * p) / p;
      prev = next;
    }
    return E;
  }

  void grad_hess(const Eigen::VectorXd& v, Eigen::VectorXd& g,
                 SpMat& H) const {
    const double h = grid.hx();
    const int ni = static_cast<int>(v.size());
    g.setZero(ni);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(3 * ni);
    double prev = 0.0;
    for (int e = 0; e < edge_weights.size(); ++e) {
      const int ia = e - 1, ib = e;  // interior indices of the edge ends
      const double next = ib < ni ? v[ib] : 0.0;
      const double d = (next - prev) / h;
      const double s = d * d + eps * eps;
      const double q = std::pow(s, 0.5 * p - 1.0);
      const double ge = edge_weights[e] * q * d / h;
      const double ce =
          edge_weights[e] * (q + (p - 2.0) * std::pow(s, 0.5 * p - 2.0) * d * d) /
          (h * h);
      if (ia >= 0) {
        g[ia] -= ge;
        trip.emplace_back(ia, ia, ce);
      }
      if (ib < ni) {
        g[ib] += ge;
        trip.emplace_back(ib, ib, ce);
      }
      if (ia >= 0 && ib < ni) {
        trip.emplace_back(ia, ib, -ce);
        trip.emplace_back(ib, ia, -ce);
      }
      prev = next;
    }
    H.resize(ni, ni);
    H.setFromTriplets(trip.begin(), trip.end());
  }

  // Lagged-diffusivity step matrix: the weighted Laplacian with edge
  // coefficients frozen at s^{p/2-1}. Positive definite for every p > 1 and,
  // unlike the true Hessian, not degenerate near flat edges when p < 2.
  SpMat picard_matrix(const Eigen::VectorXd& v) const {
    const double h = grid.hx();
    const int ni = static_cast<int>(v.size());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(3 * ni);
    double prev = 0.0;
    for (int e = 0; e < edge_weights.size(); ++e) {
      const int ia = e - 1, ib = e;
      const double next = ib < ni ? v[ib] : 0.0;
      const double d = (next - prev) / h;
      const double ce = edge_weights[e] *
                        std::pow(d * d + eps * eps, 0.5 * p - 1.0) / (h * h);
      if (ia >= 0) trip.emplace_back(ia, ia, ce);
      if (ib < ni) trip.emplace_back(ib, ib, ce);
      if (ia >= 0 && ib < ni) {
        trip.emplace_back(ia, ib, -ce);
        trip.emplace_back(ib, ia, -ce);
      }
      prev = next;
    }
    SpMat A(ni, ni);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
  }

  // Picard iteration with backtracking on the first-order residual; the
  // route of choice for p < 2 where the Newton model degenerates.
  bool picard(const Eigen::VectorXd& b, Eigen::VectorXd& v,
              const SolverOptions& opts) const {
    Eigen::VectorXd g;
    SpMat H;
    const double bnorm = b.norm();
    for (int it = 0; it < opts.max_inner; ++it) {
      grad_hess(v, g, H);
      Eigen::VectorXd r = g - b;
      if (r.norm() <= opts.inner_tol * std::max(1.0, bnorm)) break;
      Eigen::SimplicialLDLT<SpMat> ldlt(picard_matrix(v));
      if (ldlt.info() != Eigen::Success) return false;
      const Eigen::VectorXd vn = ldlt.solve(b);
      if (!vn.allFinite()) return false;
      const Eigen::VectorXd dv = vn - v;
      const double r0 = r.norm();
      double t = 1.0;
      bool moved = false;
      while (t > 1e-12) {
        const Eigen::VectorXd vt = v + t * dv;
        grad_hess(vt, g, H);
        const double rt = (g - b).norm();
        if (std::isfinite(rt) && rt < r0) {
          v = vt;
          moved = true;
          break;
        }
        t *= 0.5;
      }
      if (!moved) break;
    }
    return true;
  }

  // Returns false if degraded to gradient descent.
  bool minimize(const Eigen::VectorXd& b, Eigen::VectorXd& v,
                const SolverOptions& opts) const {
    bool clean = true;
    Eigen::VectorXd g;
    SpMat H;
    const double bnorm = b.norm();
    for (int it = 0; it < opts.max_inner; ++it) {
      grad_hess(v, g, H);
      Eigen::VectorXd r = g - b;
      if (r.norm() <= opts.inner_tol * std::max(1.0, bnorm)) break;
      Eigen::SimplicialLDLT<SpMat> ldlt(H);
      Eigen::VectorXd dv;
      bool newton_ok = ldlt.info() == Eigen::Success;
      if (newton_ok) {
        dv = ldlt.solve(-r);
        // a near-singular Hessian (flat iterate, p > 2) can return a
        // finite but astronomically long step; treat it as unusable
        newton_ok = dv.allFinite() && r.dot(dv) < 0.0 &&
                    dv.norm() <= 1e8 * std::max(1.0, v.norm());
      }
      if (!newton_ok) {
        dv = -r;  // steepest descent fallback
        clean = false;
      }
      const double e0 = energy(v) - b.dot(v);
      const double slope = r.dot(dv);
      double t = 1.0;
      bool moved = false;
      while (t > 1e-14) {
        const Eigen::VectorXd vt = v + t * dv;
        const double et = energy(vt) - b.dot(vt);
        if (std::isfinite(et) && et <= e0 + 1e-4 * t * slope) {
          v = vt;
          moved = true;
          break;
        }
        t *= 0.5;
      }
      if (!moved) break;  // stagnation; the outer loop judges convergence
    }
    return clean;
  }
};

// 2D inner solve: Picard (lagged diffusivity) on the transverse-averaged
// flux operator with backtracking on the nonlinear residual. Linear systems
// go through conjugate gradients.
struct Inner2D {
  const Grid& grid;
  const WeightField& w;
  double p, eps;

  Eigen::VectorXd residual(const LinearOperator& shape,
                           const Eigen::VectorXd& v,
                           const Eigen::VectorXd& b) const {
    ScalarField vf = shape.extend_zero(v);
    ScalarField lap = apply_p_laplacian(vf, p, w, eps);
    Eigen::VectorXd r(v.size());
    const auto& interior = grid.interior();
    for (size_t k = 0; k < interior.size(); ++k) {
      r[k] = -lap.values[interior[k]] * w.measure_weights[interior[k]] - b[k];
    }
    return r;
  }

  SpMat frozen_matrix(const Eigen::VectorXd& v,
                      const LinearOperator& shape) const {
    const int nx = grid.nx();
    const double hx = grid.hx(), hy = grid.hy();
    ScalarField vf = shape.extend_zero(v);
    std::vector<Eigen::Triplet<double>> trip;
    auto q_at = [&](int a, int stride, double h, bool ty) {
      const int bnode = a + stride;
      const double d = (vf.values[bnode] - vf.values[a]) / h;
      double s = d * d;
      double t;
      if (ty) {
        t = ((vf.values[a + nx] - vf.values[a - nx]) +
             (vf.values[bnode + nx] - vf.values[bnode - nx])) / (4.0 * hy);
      } else {
        t = ((vf.values[a + 1] - vf.values[a - 1]) +
             (vf.values[bnode + 1] - vf.values[bnode - 1])) / (4.0 * hx);
      }
      s += t * t;
      return std::pow(s + eps * eps, 0.5 * p - 1.0);
    };
    auto add_edge = [&](int a, int bnode, double c) {
      const int ia = grid.interior_index(a);
      const int ib = grid.interior_index(bnode);
      if (ia < 0 && ib < 0) return;
      if (ia >= 0) trip.emplace_back(ia, ia, c);
      if (ib >= 0) trip.emplace_back(ib, ib, c);
      if (ia >= 0 && ib >= 0) {
        trip.emplace_back(ia, ib, -c);
        trip.emplace_back(ib, ia, -c);
      }
    };
    const double vol = grid.cell_volume();
    for (int j = 1; j < grid.ny() - 1; ++j) {
      for (int i = 0; i + 1 < nx; ++i) {
        const int a = grid.index(i, j);
        add_edge(a, a + 1,
                 vol / (hx * hx) * w.edge_weight(a, a + 1) * q_at(a, 1, hx, true));
      }
    }
    for (int i = 1; i < nx - 1; ++i) {
      for (int j = 0; j + 1 < grid.ny(); ++j) {
        const int a = grid.index(i, j);
        add_edge(a, a + nx,
                 vol / (hy * hy) * w.edge_weight(a, a + nx) *
                     q_at(a, nx, hy, false));
      }
    }
    SpMat A(v.size(), v.size());
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
  }

  bool minimize(const Eigen::VectorXd& b, Eigen::VectorXd& v,
                const LinearOperator& shape, const SolverOptions& opts) const {
    const double bnorm = b.norm();
    for (int it = 0; it < opts.max_inner; ++it) {
      Eigen::VectorXd r = residual(shape, v, b);
      if (r.norm() <= std::max(opts.inner_tol, 1e-10) * std::max(1.0, bnorm)) {
        break;
      }
      SpMat A = frozen_matrix(v, shape);
      Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper> cg;
      cg.setTolerance(1e-12);
      cg.compute(A);
      Eigen::VectorXd vn = cg.solve(b);
      Eigen::VectorXd dv = vn - v;
      double t = 1.0;
      const double r0 = r.norm();
      while (t > 1e-12) {
        if (residual(shape, v + t * dv, b).norm() < r0) break;
        t *= 0.5;
      }
      if (t <= 1e-12) return false;
      v += t * dv;
    }
    return true;
  }
};

}  // namespace

EigenResult solve_plaplacian_dirichlet(const Grid& grid, const WeightField& w,
                                       double p, const SolverOptions& opts) {
  if (p <= 1.0) throw ParameterError("p-Laplacian eigensolve requires p > 1");
  const LinearOperator shape = assemble_laplacian_f(grid, w);
  const Eigen::VectorXd m = interior_masses(grid, w);
  const int ni = static_cast<int>(m.size());

  // Seed with the p = 2 eigenfunction: smooth, positive, and with a nonzero
  // gradient almost everywhere, which keeps the inner Hessian nonsingular
  // for p > 2 (a flat start zeroes every edge coefficient).
  Eigen::VectorXd u;
  {
    const EigenResult lin = solve_linear_dirichlet(grid, w, opts);
    u = shape.restrict_interior(lin.u);
    if (!lin.converged || !u.allFinite()) u = Eigen::VectorXd::Ones(ni);
  }
  u /= lp_norm(m, u, p);

  double eps = opts.eps;
  if (eps < 0.0) {
    const VectorField g0 = gradient(shape.extend_zero(u));
    double scale = 0.0;
    for (int k = 0; k < g0.values.rows(); ++k) {
      scale = std::max(scale, g0.norm_at(k));
    }
    eps = default_regularization(p, scale);
  }

  EigenResult res;
  res.normalization = "Lp(mu)-unit";
  double lambda_prev = -1.0;
  bool restarted = false;
  std::mt19937_64 rng(opts.seed);

  for (int it = 1; it <= opts.max_outer; ++it) {
    Eigen::VectorXd b(ni);
    for (int k = 0; k < ni; ++k) {
      b[k] = m[k] * std::pow(std::abs(u[k]), p - 1.0) *
             (u[k] >= 0.0 ? 1.0 : -1.0);
    }
    Eigen::VectorXd v = u;
    bool clean;
    if (grid.dimension() == 1) {
      const Inner1D inner(grid, w, p, eps);
      clean = p < 2.0 ? inner.picard(b, v, opts)
                      : inner.minimize(b, v, opts);
    } else {
      clean = Inner2D{grid, w, p, eps}.minimize(b, v, shape, opts);
    }
    if (!clean) res.degraded = true;

    v /= lp_norm(m, v, p);
    double mean = v.sum();
    if (mean < 0.0) v = -v;
    u = v;
    res.iterations = it;

    const double lambda = p_rayleigh_quotient(shape.extend_zero(u), p, w, 0.0);
    if (lambda_prev > 0.0 &&
        std::abs(lambda - lambda_prev) <= opts.tol * std::abs(lambda)) {
      res.lambda = lambda;
      res.converged = true;
      break;
    }
    res.lambda = lambda;
    lambda_prev = lambda;
    if (!restarted && it == opts.max_outer / 2) {
      restarted = true;
      std::uniform_real_distribution<double> dist(0.5, 1.5);
      for (int k = 0; k < ni; ++k) u[k] = std::abs(u[k]) * dist(rng);
      u /= lp_norm(m, u, p);
      lambda_prev = -1.0;
    }
  }

  res.u = shape.extend_zero(u);
  fix_sign(grid, res.u);
  if (res.converged) {
    require_interior_positive(grid, res.u, "p-Laplacian solve");
  }

  // Relative eigen-residual of the returned pair.
  const ScalarField lap = apply_p_laplacian(res.u, p, w, eps);
  double num = 0.0, den = 0.0;
  for (int node : grid.interior()) {
    const double src = res.lambda *
                       std::pow(std::abs(res.u.values[node]), p - 1.0);
    const double r = lap.values[node] + src;
    num += w.measure_weights[node] * r * r;
    den += w.measure_weights[node] * src * src;
  }
  res.residual = std::sqrt(num / den);
  return res;
}

}  // namespace wplab
