#pragma once

#include "isee/types.hpp"

#include <span>
#include <vector>

namespace isee {

struct SolverOptions {
  // Inner coordinate descent stops once the largest coefficient change in a
  // sweep is at most inner_tol * max(1, |beta|_inf).
  double inner_tol = 1e-9;
  // Outer loop stops once |sigma_new - sigma| <= outer_tol * sigma.
  double outer_tol = 1e-8;
  int max_outer = 100;
  int max_sweeps = 10000;
  double sigma_floor = 1e-12;
};

/// One nodewise regression: `response` on the columns `columns` of `design`.
///
/// The design is referenced, not copied, so that the p nodewise fits of a
/// pipeline can share one read-only data matrix. `column_scales[i]` is the
/// scale n^{-1/2} |X_k|_2 of design column `columns[i]`.
struct RegressionProblem {
  Eigen::Ref<const Vector> response;
  Eigen::Ref<const Matrix> design;
  IndexSet columns;
  Vector column_scales;
};

/// Builds a problem over the given columns of `design` with the standard
/// n^{-1/2} |X_k|_2 column scales. Validates the problem invariants.
RegressionProblem make_regression_problem(Eigen::Ref<const Vector> response,
                                          Eigen::Ref<const Matrix> design,
                                          IndexSet columns);

/// Same, over every column of `design`.
RegressionProblem make_regression_problem(Eigen::Ref<const Vector> response,
                                          Eigen::Ref<const Matrix> design);

struct ScaledLassoFit {
  Vector beta;  // one coefficient per problem column, original column scale
  double sigma = 0.0;
  Vector residuals;
  double objective = 0.0;
  int outer_iterations = 0;
  bool converged = false;
  // Objective value after each outer iteration (index 0 is the start point).
  std::vector<double> objective_trace;
};

/// |y - X beta|^2 / (2 n sigma) + sigma / 2 + lambda * sum_k scale_k |beta_k|.
double scaled_lasso_objective(const RegressionProblem& problem,
                              const Vector& beta, double sigma, double lambda);

/// Jointly minimizes the scaled-Lasso objective over (beta, sigma) by
/// alternating a coordinate-descent Lasso at penalty lambda * sigma with the
/// closed-form update sigma = |residuals|_2 / sqrt(n).
///
/// `warm_start`, when non-empty, seeds the coefficient vector.
ScaledLassoFit fit_scaled_lasso(const RegressionProblem& problem,
                                double lambda,
                                const SolverOptions& opts = {},
                                std::span<const double> warm_start = {});

/// B / sqrt(n - 1 + B^2) with B the (1 - sqrt(n) / (2 p log p)) quantile of a
/// t distribution with n - 1 degrees of freedom. Throws InvalidConfiguration
/// when the quantile level falls outside (0, 1) or B is not positive.
double universal_lambda(Index n, Index p);

/// (1 + eps) * sqrt(2 delta log(p) / n), the asymptotic penalty level.
double theoretical_lambda(Index n, Index p, double delta, double eps);

}  // namespace isee
