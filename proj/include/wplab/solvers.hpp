#pragma once

#include <cstdint>
#include <string>

#include "wplab/operators.hpp"

namespace wplab {

struct SolverOptions {
  double tol = 1e-8;        // relative change of the eigenvalue
  int max_outer = 500;
  int max_inner = 100;
  double eps = -1.0;        // p-Laplacian regularization; < 0 selects the
                            // default (0 for p >= 2, 1e-8 * scale below)
  double inner_tol = 1e-11; // inner solve residual, relative
  std::uint64_t seed = 0;   // restart field seed
};

struct EigenResult {
  double lambda = 0.0;
  ScalarField u;            // full-grid field, zero on the boundary
  double residual = 0.0;    // relative eigen-residual of the returned pair
  int iterations = 0;
  bool converged = false;
  std::string normalization = "Lp(mu)-unit";
  bool degraded = false;    // inner Newton fell back to gradient steps
};

/// Smallest eigenpair of -Delta_f with Dirichlet boundary values.
EigenResult solve_linear_dirichlet(const Grid& grid, const WeightField& w,
                                   const SolverOptions& opts = {});

/// First eigenpair of the weighted p-Laplacian via inverse power iteration
/// with a convex inner minimization. The eigenvalue is reported as the
/// Rayleigh quotient of the final iterate.
EigenResult solve_plaplacian_dirichlet(const Grid& grid, const WeightField& w,
                                       double p,
                                       const SolverOptions& opts = {});

/// Smallest clamped-plate eigenvalue (Delta_f^2 against the d-mu mass).
EigenResult solve_clamped_plate(const Grid& grid, const WeightField& w,
                                const SolverOptions& opts = {});

/// Smallest buckling eigenvalue (Delta_f^2 against the Dirichlet energy).
EigenResult solve_buckling(const Grid& grid, const WeightField& w,
                           const SolverOptions& opts = {});

/// Discrete Rayleigh quotient <-Delta_{p,f} u, u>_mu / int |u|^p dmu used
/// for every reported p-Laplacian eigenvalue (edge-based gradient
/// quadrature; coincides with the stiffness form at p = 2).
double p_rayleigh_quotient(const ScalarField& u, double p,
                           const WeightField& w, double eps = 0.0);

}  // namespace wplab
