#pragma once

#include "isee/estimate.hpp"
#include "isee/types.hpp"

#include <span>
#include <vector>

namespace isee {

/// Refits each column j of the precision matrix on its support S_j (which
/// always contains j) by solving Sigma_{S,S} w = e_j with the sample
/// covariance Sigma = n^{-1} X^T X. Uses a pseudo-inverse when
/// |S_j| >= pinv_fraction * n. Entries (j, k) and (k, j) are averaged.
PrecisionEstimate refit_columns(const DataMatrix& x, const LinkSet& support,
                                double pinv_fraction = 0.9,
                                Execution exec = Execution::parallel);

struct ClassStats {
  Vector mu1;
  Vector mu2;
  Index n1 = 0;
  Index n2 = 0;
};

/// Class means and sizes; labels are 1 or 2.
ClassStats class_stats(const DataMatrix& x, std::span<const int> labels);

struct LdaDecision {
  double score = 0.0;
  int label = 2;  // 1 iff score > 0
};

/// L(x) = (x - (mu1 + mu2) / 2)^T Omega T_tau(mu1 - mu2) + log(n1 / n2).
LdaDecision lda_score(const PrecisionEstimate& omega, const ClassStats& stats,
                      double tau_mu, const Vector& x);

struct ClassificationMetrics {
  double specificity = 0.0;
  double sensitivity = 0.0;
  double mcc = 0.0;
  Index tp = 0, tn = 0, fp = 0, fn = 0;
};

/// Class 1 is the positive class. Zero denominators give 0.
ClassificationMetrics classification_metrics(std::span<const int> predicted,
                                             std::span<const int> truth);

struct PortfolioSpec {
  Vector mu;
  double gamma = 0.0;
};

/// Minimum-variance weights with xi^T 1 = 1 and xi^T mu = gamma. Throws
/// InvalidConfiguration when mu is (numerically) proportional to 1, unless
/// gamma equals the forced return, in which case the global minimum-variance
/// portfolio is returned.
Vector markowitz_weights(const PrecisionEstimate& omega, const PortfolioSpec& spec);

/// n^{-1} xhat^T y.
Vector innovated_scores(const Matrix& xhat, const Vector& y);

}  // namespace isee
