#pragma once

#include "isee/block_fit.hpp"
#include "isee/partition.hpp"
#include "isee/scaled_lasso.hpp"
#include "isee/types.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace isee {

enum class EstimateKind { initial, thresholded, refined, bias_corrected, ensemble };

std::string_view to_string(EstimateKind kind);
EstimateKind estimate_kind_from_string(std::string_view name);

/// p x p symmetric precision estimate. The support is the set of nonzero
/// entries; values are kept exactly symmetric.
class PrecisionEstimate {
 public:
  PrecisionEstimate() = default;
  /// Throws InvalidInput unless `values` is square and exactly symmetric.
  PrecisionEstimate(Matrix values, EstimateKind kind);

  const Matrix& values() const { return values_; }
  EstimateKind kind() const { return kind_; }
  Index nodes() const { return values_.rows(); }

  /// Nonzero off-diagonal pairs (j < k).
  LinkSet support() const;

 private:
  Matrix values_;
  EstimateKind kind_ = EstimateKind::initial;
};

/// Estimate of the oracle innovated matrix X * Omega.
struct InnovatedMatrix {
  Matrix values;  // n x p
};

/// Columns of block A_l are residuals(A_l) * omega_block(A_l). Throws
/// InvalidInput when the blocks overlap or miss a column.
InnovatedMatrix assemble_xhat(Index n, Index p, std::span<const BlockFit> blocks);

/// n^{-1} xhat^T xhat. When `blocks` is given, the diagonal blocks are set to
/// each block's omega_block (the two agree up to rounding).
PrecisionEstimate initial_estimator(const InnovatedMatrix& xhat,
                                    std::span<const BlockFit> blocks = {},
                                    Execution exec = Execution::parallel);

/// Keeps entries with |b_jk| >= tau. The diagonal is thresholded too unless
/// `keep_diagonal` is set.
PrecisionEstimate threshold(const PrecisionEstimate& est, double tau,
                            bool keep_diagonal = false);

/// grid_size equally spaced values on [0, max off-diagonal |entry|], or {0}
/// when every off-diagonal entry vanishes.
std::vector<double> tau_grid(const PrecisionEstimate& est, Index grid_size);

struct RefineReport {
  Index links_refit = 0;
  Index fallbacks = 0;  // links whose union support exceeded n - 2
};

/// Re-estimates every cross-block link (j, k) in `support` by the
/// off-diagonal entry of the 2 x 2 block precision of {j, k}, regressing on
/// the union of the row supports of j and k in `est` (minus j and k).
PrecisionEstimate refine(const DataMatrix& x, const LinkSet& support,
                         double lambda, const PrecisionEstimate& est,
                         const Partition& partition,
                         const SolverOptions& opts = {},
                         Execution exec = Execution::parallel,
                         RefineReport* report = nullptr);

/// Off-diagonal blocks corrected with the estimated regression coefficients;
/// diagonal blocks copied from the initial estimate.
PrecisionEstimate bias_corrected(const PrecisionEstimate& initial,
                                 std::span<const BlockFit> blocks);

}  // namespace isee
