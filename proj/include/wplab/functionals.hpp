#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wplab/operators.hpp"

namespace wplab {

/// Value of an integral functional together with divergence evidence from a
/// grid-refinement trace. A trace that grows monotonically by more than 20%
/// per halving of h marks the value suspected-divergent.
struct FunctionalEstimate {
  double value = 0.0;
  bool suspected_divergent = false;
  std::vector<double> refinement_trace;  // coarse to fine

  std::string flag() const {
    return suspected_divergent ? "suspected-divergent" : "convergent";
  }
};

/// Applies the 20%-growth rule to a coarse-to-fine trace; the finest value
/// becomes the estimate.
FunctionalEstimate make_functional_estimate(std::vector<double> trace);

/// Pointwise hypothesis check: minimum over nodes of a quadratic form (or a
/// boundary quantity), with the explicit tolerance it was judged against.
struct ConditionReport {
  std::string name;
  double min_value = 0.0;
  bool satisfied = false;
  int location = -1;   // node of the minimum
  double tol_cond = 0.0;
};

/// I_{p,alpha} = int |u|^{alpha-p} |grad u|^{2p} dmu
///             / int |u|^alpha  |grad u|^p  dmu     over interior nodes.
double i_functional_value(const ScalarField& u, double p, double alpha,
                          const WeightField& w);
FunctionalEstimate i_functional(const ScalarField& u, double p, double alpha,
                                const WeightField& w);

/// Relative residual of
///   int |u|^alpha |grad u|^p dmu = lambda/(alpha+1) int |u|^{alpha+p} dmu
double identity_residual(const ScalarField& u, double lambda, double p,
                         double alpha, const WeightField& w);

/// phi = u^beta; admissible as a clamped trial function only for beta > 1.
ScalarField power_test_function(const ScalarField& u, double beta);

/// Rayleigh-Ritz quotients of a clamped trial function.
double plate_quotient_value(const ScalarField& phi, const WeightField& w);
double buckling_quotient_value(const ScalarField& phi, const WeightField& w);
FunctionalEstimate plate_quotient(const ScalarField& phi,
                                  const WeightField& w);
FunctionalEstimate buckling_quotient(const ScalarField& phi,
                                     const WeightField& w);

/// Minimum over interior nodes of the smallest eigenvalue of
///   hess f + c * hess u / u
/// (u omitted or c = 0 reduces to the curvature of the weight alone).
ConditionReport curvature_condition(const std::optional<ScalarField>& u,
                                    const WeightField& w, double c,
                                    double tol_cond = 1e-8);

/// f-mean curvature hypothesis on flat boundary faces: min of -<grad f, nu>
/// over non-corner boundary nodes.
ConditionReport hf_boundary(const WeightField& w, const Grid& grid,
                            double tol_cond = 1e-8);

struct BochnerResult {
  ScalarField residual;        // zero outside the evaluation set
  std::vector<int> evaluated;  // nodes two layers deep with |grad u| >= delta
  double sup_norm = 0.0;
};

/// Node-wise residual of the weighted Bochner identity for the p-Laplacian;
/// diagnostic, O(h) on smooth fields away from critical points.
BochnerResult bochner_residual(const ScalarField& u, const WeightField& w,
                               double p);

/// Max over non-corner boundary nodes of
///   | (1/2) d(|grad u|^2)/dnu + H_f |grad u|^2 |
/// relative to the max boundary |grad u|^2.
double boundary_normal_gradient_identity(const ScalarField& u,
                                         const WeightField& w,
                                         const Grid& grid);

}  // namespace wplab
