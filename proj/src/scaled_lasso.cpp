#include "isee/scaled_lasso.hpp"

#include "isee/errors.hpp"
#include "isee/student_t.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace isee {
namespace {

double soft_threshold(double z, double gamma) {
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

void validate(const RegressionProblem& problem) {
  const Index n = problem.response.size();
  if (n < 2) throw InvalidInput("regression needs at least 2 observations");
  if (problem.design.rows() != n) {
    throw InvalidInput("design row count does not match response length");
  }
  if (static_cast<Index>(problem.columns.size()) !=
      problem.column_scales.size()) {
    throw InvalidInput("one column scale is required per design column");
  }
  for (const Index k : problem.columns) {
    if (k < 0 || k >= problem.design.cols()) {
      throw InvalidInput("design column index out of range");
    }
  }
  for (Index i = 0; i < problem.column_scales.size(); ++i) {
    const double s = problem.column_scales[i];
    if (!std::isfinite(s) || s < 0.0) {
      throw InvalidInput("column scales must be finite and nonnegative");
    }
  }
  if (!problem.response.allFinite()) {
    throw InvalidInput("response has non-finite entries");
  }
}

// Coordinate-descent Lasso for
//   |y - X beta|^2 / (2n) + penalty * sum_k scale_k |beta_k|
// updating beta and the residual vector in place.
void lasso_coordinate_descent(const RegressionProblem& problem, double penalty,
                              const Vector& col_sq, const SolverOptions& opts,
                              Vector& beta, Vector& residuals) {
  const Index m = beta.size();
  const double inv_n = 1.0 / static_cast<double>(problem.response.size());
  const auto& X = problem.design;

  std::vector<Index> active;
  active.reserve(static_cast<size_t>(m));

  auto update = [&](Index i) {
    const double sq = col_sq[i];
    if (sq == 0.0) return 0.0;
    const auto col = X.col(problem.columns[static_cast<size_t>(i)]);
    const double old = beta[i];
    const double z = col.dot(residuals) * inv_n + sq * old;
    const double next =
        soft_threshold(z, penalty * problem.column_scales[i]) / sq;
    if (next == old) return 0.0;
    residuals.noalias() -= (next - old) * col;
    beta[i] = next;
    return std::fabs(next - old);
  };

  auto converged = [&](double max_change) {
    const double scale = std::max(1.0, beta.cwiseAbs().maxCoeff());
    return max_change <= opts.inner_tol * scale;
  };

  int sweeps = 0;
  while (sweeps < opts.max_sweeps) {
    // Full sweep over every column.
    double max_change = 0.0;
    active.clear();
    for (Index i = 0; i < m; ++i) {
      max_change = std::max(max_change, update(i));
      if (beta[i] != 0.0) active.push_back(i);
    }
    ++sweeps;
    if (m == 0 || converged(max_change)) break;
    // Iterate on the active set until it settles, then re-check everything.
    while (sweeps < opts.max_sweeps) {
      double active_change = 0.0;
      for (const Index i : active) {
        active_change = std::max(active_change, update(i));
      }
      ++sweeps;
      if (converged(active_change)) break;
    }
  }
}

void recompute_residuals(const RegressionProblem& problem, const Vector& beta,
                         Vector& residuals) {
  residuals = problem.response;
  for (Index i = 0; i < beta.size(); ++i) {
    if (beta[i] != 0.0) {
      residuals.noalias() -=
          beta[i] * problem.design.col(problem.columns[static_cast<size_t>(i)]);
    }
  }
}

}  // namespace

RegressionProblem make_regression_problem(Eigen::Ref<const Vector> response,
                                          Eigen::Ref<const Matrix> design,
                                          IndexSet columns) {
  const double inv_sqrt_n =
      1.0 / std::sqrt(static_cast<double>(design.rows()));
  Vector scales(static_cast<Index>(columns.size()));
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] < 0 || columns[i] >= design.cols()) {
      throw InvalidInput("design column index out of range");
    }
    scales[static_cast<Index>(i)] = design.col(columns[i]).norm() * inv_sqrt_n;
    if (!std::isfinite(scales[static_cast<Index>(i)])) {
      throw NumericalFailure("column norm overflows double precision");
    }
  }
  RegressionProblem problem{response, design, std::move(columns),
                            std::move(scales)};
  validate(problem);
  return problem;
}

RegressionProblem make_regression_problem(Eigen::Ref<const Vector> response,
                                          Eigen::Ref<const Matrix> design) {
  IndexSet all(static_cast<size_t>(design.cols()));
  std::iota(all.begin(), all.end(), Index{0});
  return make_regression_problem(response, design, std::move(all));
}

double scaled_lasso_objective(const RegressionProblem& problem,
                              const Vector& beta, double sigma,
                              double lambda) {
  Vector r;
  recompute_residuals(problem, beta, r);
  const double n = static_cast<double>(problem.response.size());
  const double penalty =
      lambda * problem.column_scales.cwiseProduct(beta).cwiseAbs().sum();
  return r.squaredNorm() / (2.0 * n * sigma) + 0.5 * sigma + penalty;
}

ScaledLassoFit fit_scaled_lasso(const RegressionProblem& problem,
                                double lambda, const SolverOptions& opts,
                                std::span<const double> warm_start) {
  validate(problem);
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidInput("lambda must be finite and nonnegative");
  }
  const Index n = problem.response.size();
  const Index m = static_cast<Index>(problem.columns.size());
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  // Squared column scales double as |X_k|^2 / n. Zero-scale columns stay 0.
  const Vector col_sq = problem.column_scales.array().square().matrix();

  ScaledLassoFit fit;
  fit.beta = Vector::Zero(m);
  if (!warm_start.empty()) {
    if (static_cast<Index>(warm_start.size()) != m) {
      throw InvalidInput("warm start length does not match the design");
    }
    for (Index i = 0; i < m; ++i) {
      if (col_sq[i] != 0.0) fit.beta[i] = warm_start[static_cast<size_t>(i)];
    }
  }
  recompute_residuals(problem, fit.beta, fit.residuals);

  auto objective_at = [&](double sigma) {
    const double penalty =
        lambda * problem.column_scales.cwiseProduct(fit.beta).cwiseAbs().sum();
    return fit.residuals.squaredNorm() / (2.0 * n * sigma) + 0.5 * sigma +
           penalty;
  };

  if (problem.response.squaredNorm() == 0.0 && lambda > 0.0) {
    fit.beta.setZero();
    fit.residuals.setZero();
    fit.sigma = opts.sigma_floor;
    fit.objective = objective_at(fit.sigma);
    fit.objective_trace.push_back(fit.objective);
    fit.converged = true;
    return fit;
  }

  double sigma = std::max(opts.sigma_floor, fit.residuals.norm() / sqrt_n);
  fit.objective_trace.push_back(objective_at(sigma));

  for (int it = 1; it <= opts.max_outer; ++it) {
    lasso_coordinate_descent(problem, lambda * sigma, col_sq, opts, fit.beta,
                             fit.residuals);
    // Refresh from the coefficients so residuals = y - X beta holds exactly.
    recompute_residuals(problem, fit.beta, fit.residuals);
    const double next = std::max(opts.sigma_floor, fit.residuals.norm() / sqrt_n);
    fit.objective_trace.push_back(objective_at(next));
    fit.outer_iterations = it;
    const bool done = std::fabs(next - sigma) <= opts.outer_tol * sigma;
    sigma = next;
    if (done) {
      fit.converged = true;
      break;
    }
  }
  fit.sigma = sigma;
  fit.objective = fit.objective_trace.back();
  return fit;
}

double universal_lambda(Index n, Index p) {
  if (n < 3 || p < 2) {
    throw InvalidConfiguration("universal lambda needs n >= 3 and p >= 2");
  }
  const double nd = static_cast<double>(n);
  const double pd = static_cast<double>(p);
  const double tail = std::sqrt(nd) / (2.0 * pd * std::log(pd));
  const double level = 1.0 - tail;
  if (!(level > 0.0 && level < 1.0)) {
    throw InvalidConfiguration(
        "universal lambda quantile level " + std::to_string(level) +
        " outside (0, 1): n is too large relative to p, supply lambda");
  }
  const double b = student_t_quantile(level, nd - 1.0);
  if (!(b > 0.0)) {
    throw InvalidConfiguration(
        "universal lambda is not positive for n = " + std::to_string(n) +
        ", p = " + std::to_string(p) + ": supply lambda");
  }
  return b / std::sqrt(nd - 1.0 + b * b);
}

double theoretical_lambda(Index n, Index p, double delta, double eps) {
  if (n < 1 || p < 2) {
    throw InvalidConfiguration("theoretical lambda needs n >= 1 and p >= 2");
  }
  return (1.0 + eps) * std::sqrt(2.0 * delta * std::log(static_cast<double>(p)) /
                                 static_cast<double>(n));
}

}  // namespace isee
