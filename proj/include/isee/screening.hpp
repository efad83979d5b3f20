#pragma once

#include "isee/block_fit.hpp"
#include "isee/types.hpp"

namespace isee {

/// Sure independence screening for the nodewise regressions.
struct ScreenConfig {
  double zeta = 0.5;        // submodel size is floor(zeta * n)
  bool standardize = true;  // rank on unit-variance columns
  int isis_iterations = 0;  // > 0 enables iterative re-screening on residuals

  /// floor(zeta * n); throws InvalidInput when the config is unusable.
  Index submodel_size(Index n) const;
};

/// Indices of A^c whose marginal statistic |X_k^T X_j| is among the
/// floor(zeta n) largest. Ties go to the smaller node index. Returned sorted
/// ascending.
IndexSet sis_screen(const DataMatrix& x, const IndexSet& block, Index node,
                    const ScreenConfig& cfg);

/// The `count` candidates with the largest |X_k^T target| (optionally on
/// unit-variance columns), sorted ascending. Ties go to the smaller index.
IndexSet screen_against(const DataMatrix& x, const IndexSet& candidates,
                        const Vector& target, Index count, bool standardize);

/// fit_block with every nodewise regression restricted to its screened
/// submodel; coefficients outside the submodel are exactly zero.
BlockFit fit_block_sis(const DataMatrix& x, IndexSet block, double lambda,
                       const ScreenConfig& cfg, const SolverOptions& opts = {});

}  // namespace isee
