#pragma once

namespace isee {

/// Regularized incomplete beta function I_x(a, b) for a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// CDF of the Student t distribution with `df` degrees of freedom.
double student_t_cdf(double t, double df);

/// Quantile of the Student t distribution. Inverts the incomplete beta with
/// a safeguarded Newton iteration (falls back to bisection whenever a Newton
/// step leaves the current bracket). Absolute tolerance 1e-10 in t.
/// Throws InvalidConfiguration unless 0 < prob < 1.
double student_t_quantile(double prob, double df);

}  // namespace isee
