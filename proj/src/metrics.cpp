#include "isee/metrics.hpp"

#include "isee/errors.hpp"

#include <algorithm>
#include <iterator>

namespace isee {
namespace {

Index common_links(const LinkSet& a, const LinkSet& b) {
  Index count = 0;
  for (const auto& link : a) count += b.count(link) ? 1 : 0;
  return count;
}

}  // namespace

RecoveryMetrics recovery_metrics(const LinkSet& estimated, const LinkSet& truth,
                                 Index p) {
  const Index pairs = p * (p - 1) / 2;
  const auto identified = static_cast<Index>(estimated.size());
  const Index correct = common_links(estimated, truth);
  const Index missed = static_cast<Index>(truth.size()) - correct;
  const Index identified_nonedges = pairs - identified;

  RecoveryMetrics out;
  if (identified == 0) {
    out.tpr = truth.empty() ? 1.0 : 0.0;
  } else {
    out.tpr = static_cast<double>(correct) / static_cast<double>(identified);
  }
  out.fpr = identified_nonedges == 0
                ? 0.0
                : static_cast<double>(missed) / static_cast<double>(identified_nonedges);
  return out;
}

ConfusionRates confusion_rates(const LinkSet& estimated, const LinkSet& truth,
                               Index p) {
  const Index pairs = p * (p - 1) / 2;
  ConfusionRates out;
  out.true_positives = common_links(estimated, truth);
  out.false_positives = static_cast<Index>(estimated.size()) - out.true_positives;
  out.false_negatives = static_cast<Index>(truth.size()) - out.true_positives;
  const Index nonedges = pairs - static_cast<Index>(truth.size());
  out.recall = truth.empty() ? 0.0
                             : static_cast<double>(out.true_positives) /
                                   static_cast<double>(truth.size());
  out.false_positive_rate =
      nonedges == 0 ? 0.0
                    : static_cast<double>(out.false_positives) / static_cast<double>(nonedges);
  return out;
}

double frobenius_error(const PrecisionEstimate& est, const Matrix& truth) {
  if (est.values().rows() != truth.rows() || est.values().cols() != truth.cols()) {
    throw InvalidInput("frobenius error: dimensions differ");
  }
  return (est.values() - truth).norm();
}

double max_abs_error(const Matrix& est, const Matrix& truth) {
  if (est.rows() != truth.rows() || est.cols() != truth.cols()) {
    throw InvalidInput("max error: dimensions differ");
  }
  return (est - truth).cwiseAbs().maxCoeff();
}

}  // namespace isee
