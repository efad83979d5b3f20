#include "isee/applications.hpp"

#include "isee/errors.hpp"
#include "isee/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isee {

PrecisionEstimate refit_columns(const DataMatrix& x, const LinkSet& support,
                                double pinv_fraction, Execution exec) {
  const Index n = x.rows();
  const Index p = x.cols();
  if (n < 1) throw InvalidInput("refit needs observations");
  const Matrix sigma = scaled_cross_product(x, 1.0 / static_cast<double>(n), exec);

  std::vector<IndexSet> column_support(static_cast<size_t>(p));
  for (Index j = 0; j < p; ++j) column_support[static_cast<size_t>(j)].push_back(j);
  for (const auto& [j, k] : support) {
    if (j == k || j < 0 || k < 0 || j >= p || k >= p) {
      throw InvalidInput("refit support must hold off-diagonal pairs in range");
    }
    column_support[static_cast<size_t>(j)].push_back(k);
    column_support[static_cast<size_t>(k)].push_back(j);
  }

  Matrix solved = Matrix::Zero(p, p);
  for_each_index(p, exec, [&](Index j) {
    auto& s = column_support[static_cast<size_t>(j)];
    std::sort(s.begin(), s.end());
    const Index m = static_cast<Index>(s.size());
    Matrix sub(m, m);
    Vector e = Vector::Zero(m);
    for (Index a = 0; a < m; ++a) {
      if (s[static_cast<size_t>(a)] == j) e[a] = 1.0;
      for (Index b = 0; b < m; ++b) sub(a, b) = sigma(s[static_cast<size_t>(a)], s[static_cast<size_t>(b)]);
    }
    Vector w;
    if (static_cast<double>(m) >= pinv_fraction * static_cast<double>(n)) {
      w = sub.completeOrthogonalDecomposition().pseudoInverse() * e;
    } else {
      w = sub.ldlt().solve(e);
    }
    for (Index a = 0; a < m; ++a) solved(s[static_cast<size_t>(a)], j) = w[a];
  });
  if (!solved.allFinite()) throw NumericalFailure("refit produced non-finite values");

  Matrix out(p, p);
  for (Index k = 0; k < p; ++k) {
    for (Index j = 0; j <= k; ++j) {
      const double v = 0.5 * (solved(j, k) + solved(k, j));
      out(j, k) = v;
      out(k, j) = v;
    }
  }
  return PrecisionEstimate(std::move(out), EstimateKind::refined);
}

ClassStats class_stats(const DataMatrix& x, std::span<const int> labels) {
  if (static_cast<Index>(labels.size()) != x.rows()) {
    throw InvalidInput("one label per observation is required");
  }
  ClassStats stats;
  stats.mu1 = Vector::Zero(x.cols());
  stats.mu2 = Vector::Zero(x.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    const int label = labels[static_cast<size_t>(i)];
    if (label == 1) {
      stats.mu1 += x.row(i).transpose();
      ++stats.n1;
    } else if (label == 2) {
      stats.mu2 += x.row(i).transpose();
      ++stats.n2;
    } else {
      throw InvalidInput("class labels must be 1 or 2, got " + std::to_string(label));
    }
  }
  if (stats.n1 < 1 || stats.n2 < 1) throw InvalidInput("both classes need observations");
  stats.mu1 /= static_cast<double>(stats.n1);
  stats.mu2 /= static_cast<double>(stats.n2);
  return stats;
}

LdaDecision lda_score(const PrecisionEstimate& omega, const ClassStats& stats,
                      double tau_mu, const Vector& x) {
  const Index p = omega.nodes();
  if (stats.mu1.size() != p || stats.mu2.size() != p || x.size() != p) {
    throw InvalidInput("LDA dimensions disagree");
  }
  if (stats.n1 < 1 || stats.n2 < 1) throw InvalidInput("class sizes must be positive");
  if (!(tau_mu >= 0.0)) throw InvalidInput("mean threshold must be nonnegative");
  Vector diff = stats.mu1 - stats.mu2;
  for (Index i = 0; i < p; ++i) {
    if (!(std::fabs(diff[i]) >= tau_mu)) diff[i] = 0.0;
  }
  const Vector centered = x - 0.5 * (stats.mu1 + stats.mu2);
  LdaDecision out;
  out.score = centered.dot(omega.values() * diff) +
              std::log(static_cast<double>(stats.n1) / static_cast<double>(stats.n2));
  out.label = out.score > 0.0 ? 1 : 2;
  return out;
}

ClassificationMetrics classification_metrics(std::span<const int> predicted,
                                             std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw InvalidInput("prediction and truth lengths differ");
  }
  ClassificationMetrics m;
  for (size_t i = 0; i < truth.size(); ++i) {
    const bool pred_pos = predicted[i] == 1;
    const bool true_pos = truth[i] == 1;
    if (pred_pos && true_pos) ++m.tp;
    else if (!pred_pos && !true_pos) ++m.tn;
    else if (pred_pos) ++m.fp;
    else ++m.fn;
  }
  const auto d = [](Index v) { return static_cast<double>(v); };
  m.specificity = m.tn + m.fp == 0 ? 0.0 : d(m.tn) / d(m.tn + m.fp);
  m.sensitivity = m.tp + m.fn == 0 ? 0.0 : d(m.tp) / d(m.tp + m.fn);
  const double denom = std::sqrt(d(m.tp + m.fp) * d(m.tp + m.fn) *
                                 d(m.tn + m.fp) * d(m.tn + m.fn));
  m.mcc = denom == 0.0 ? 0.0 : (d(m.tp) * d(m.tn) - d(m.fp) * d(m.fn)) / denom;
  return m;
}

Vector markowitz_weights(const PrecisionEstimate& omega, const PortfolioSpec& spec) {
  const Index p = omega.nodes();
  if (spec.mu.size() != p) throw InvalidInput("mean return vector has the wrong length");
  if (!spec.mu.allFinite() || !std::isfinite(spec.gamma)) {
    throw InvalidInput("portfolio inputs must be finite");
  }
  const Matrix& w = omega.values();
  const Vector ones = Vector::Ones(p);
  const Vector w_one = w * ones;
  const Vector w_mu = w * spec.mu;
  const double d1 = spec.mu.dot(w_mu);
  const double d2 = ones.dot(w_mu);
  const double d3 = ones.dot(w_one);
  const double det = d3 * d1 - d2 * d2;
  // det is a Gram determinant in the Omega inner product; compare it with
  // the scale of its terms.
  if (std::fabs(det) <= 1e-12 * std::max(std::fabs(d3 * d1), d2 * d2)) {
    // mu is parallel to 1 in the Omega metric: only gamma = d2 / d3 is feasible.
    const double forced = d2 / d3;
    if (std::fabs(spec.gamma - forced) <= 1e-12 * std::max(1.0, std::fabs(forced))) {
      return w_one / d3;
    }
    throw InvalidConfiguration("portfolio target return infeasible: mean returns "
                               "are proportional to the all-ones vector");
  }
  return ((d1 - spec.gamma * d2) / det) * w_one + ((spec.gamma * d3 - d2) / det) * w_mu;
}

Vector innovated_scores(const Matrix& xhat, const Vector& y) {
  if (xhat.rows() != y.size()) throw InvalidInput("response length does not match rows");
  return xhat.transpose() * y / static_cast<double>(xhat.rows());
}

}  // namespace isee
