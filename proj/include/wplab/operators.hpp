#pragma once

#include <Eigen/Sparse>

#include "wplab/field.hpp"
#include "wplab/weight.hpp"

namespace wplab {

using SpMat = Eigen::SparseMatrix<double>;

/// Discrete differential operator over interior nodes, stored as the
/// symmetric bilinear form of its positive counterpart in the d-mu inner
/// product:
///   dirichlet:  u^T form v = <-Delta_f u, v>_mu   (conductance/flux form)
///   clamped:    u^T form v = <Delta_f^2 u, v>_mu  (ghost-reflection closure)
/// The pointwise operator action is recovered as form/mass.
struct LinearOperator {
  enum class BC { dirichlet, clamped };

  BC bc = BC::dirichlet;
  const Grid* grid = nullptr;
  SpMat form;           // interior x interior, symmetric
  Eigen::VectorXd mass; // e^{-f} * cell volume at interior nodes

  /// Positive operator action (-Delta_f u or Delta_f^2 u) as a full-grid
  /// field, zero on the boundary. u may carry nonzero boundary values for
  /// the Dirichlet operator; they are folded into the flux differences.
  ScalarField apply(const ScalarField& u, const WeightField& w) const;

  Eigen::VectorXd restrict_interior(const ScalarField& u) const;
  ScalarField extend_zero(const Eigen::VectorXd& ui) const;
};

/// Central differences at interior nodes, second-order one-sided on the
/// boundary.
VectorField gradient(const ScalarField& u);

/// Second differences and cross differences; one-sided fallback within one
/// layer of the boundary (cross terms need the full 3x3 neighborhood).
SymTensorField hessian(const ScalarField& u);

double integrate_weighted(const ScalarField& g, const WeightField& w);

/// Same sum restricted to interior nodes; boundary-singular integrands of
/// the functionals module live here.
double integrate_weighted_interior(const ScalarField& g, const WeightField& w);

LinearOperator assemble_laplacian_f(const Grid& grid, const WeightField& w);

/// Flux-form weighted p-Laplacian action at interior nodes:
///   e^f div(e^{-f} (|grad u|^2 + eps^2)^{(p-2)/2} grad u)
/// with fluxes at edge midpoints; transverse derivatives at an edge are the
/// average of the adjacent central differences. Reduces to the Delta_f flux
/// form at p = 2, eps = 0, node for node.
ScalarField apply_p_laplacian(const ScalarField& u, double p,
                              const WeightField& w, double eps = 0.0);

/// Delta_f u at interior nodes (signed action of the Dirichlet operator).
ScalarField laplacian_f(const ScalarField& u, const WeightField& w);

LinearOperator assemble_clamped_bilaplacian(const Grid& grid,
                                            const WeightField& w);

/// Regularization default: 0 for p >= 2, 1e-8 * gradient scale below.
double default_regularization(double p, double gradient_scale);

}  // namespace wplab
