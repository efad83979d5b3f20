#pragma once

#include "isee/estimate.hpp"
#include "isee/types.hpp"

namespace isee {

struct RecoveryMetrics {
  double tpr = 0.0;  // correctly identified edges / identified edges
  double fpr = 0.0;  // true edges among identified nonedges / identified nonedges
};

/// Graph-recovery rates over unordered off-diagonal pairs.
///
/// With no identified edges, tpr is 1 if the true graph is empty and 0
/// otherwise. With no identified nonedges, fpr is 0.
RecoveryMetrics recovery_metrics(const LinkSet& estimated, const LinkSet& truth,
                                 Index p);

/// Conventional rates, reported alongside: recall = TP / true edges and
/// false positive rate = FP / true nonedges (0 when a denominator vanishes).
struct ConfusionRates {
  double recall = 0.0;
  double false_positive_rate = 0.0;
  Index true_positives = 0;
  Index false_positives = 0;
  Index false_negatives = 0;
};
ConfusionRates confusion_rates(const LinkSet& estimated, const LinkSet& truth,
                               Index p);

double frobenius_error(const PrecisionEstimate& est, const Matrix& truth);

/// max_jk |est_jk - truth_jk|
double max_abs_error(const Matrix& est, const Matrix& truth);

}  // namespace isee
