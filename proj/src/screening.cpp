#include "isee/screening.hpp"

#include "isee/errors.hpp"
#include "isee/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isee {

Index ScreenConfig::submodel_size(Index n) const {
  if (!(zeta > 0.0 && zeta <= 1.0)) {
    throw InvalidInput("screening fraction zeta must lie in (0, 1]");
  }
  const auto size = static_cast<Index>(std::floor(zeta * static_cast<double>(n)));
  if (size < 1) throw InvalidInput("screening keeps no regressors: floor(zeta n) < 1");
  return size;
}

IndexSet screen_against(const DataMatrix& x, const IndexSet& candidates,
                        const Vector& target, Index count, bool standardize) {
  if (count <= 0) return {};
  if (count >= static_cast<Index>(candidates.size())) return candidates;
  const double n = static_cast<double>(x.rows());
  std::vector<double> score(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    const auto col = x.col(candidates[i]);
    double w = std::fabs(col.dot(target));
    if (standardize) {
      const double mean = col.sum() / n;
      const double sd = std::sqrt(std::max(0.0, col.squaredNorm() / n - mean * mean));
      w = sd > 0.0 ? w / sd : 0.0;
    }
    score[i] = w;
  }
  std::vector<size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), size_t{0});
  // candidates are ascending, so a stable sort breaks ties by node index.
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return score[a] > score[b]; });
  IndexSet kept;
  kept.reserve(static_cast<size_t>(count));
  for (Index i = 0; i < count; ++i) kept.push_back(candidates[order[static_cast<size_t>(i)]]);
  std::sort(kept.begin(), kept.end());
  return kept;
}

IndexSet sis_screen(const DataMatrix& x, const IndexSet& block, Index node,
                    const ScreenConfig& cfg) {
  if (std::find(block.begin(), block.end(), node) == block.end()) {
    throw InvalidInput("screened node must belong to the block");
  }
  IndexSet sorted = block;
  std::sort(sorted.begin(), sorted.end());
  const IndexSet comp = complement(sorted, x.cols());
  if (comp.empty()) throw InvalidInput("screening needs a nonempty complement");
  const Vector target = x.col(node);
  return screen_against(x, comp, target, cfg.submodel_size(x.rows()),
                        cfg.standardize);
}

BlockFit fit_block_sis(const DataMatrix& x, IndexSet block, double lambda,
                       const ScreenConfig& cfg, const SolverOptions& opts) {
  return fit_block(x, std::move(block), lambda, opts, &cfg);
}

}  // namespace isee
