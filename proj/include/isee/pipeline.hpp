#pragma once

#include "isee/block_fit.hpp"
#include "isee/cross_validation.hpp"
#include "isee/estimate.hpp"
#include "isee/partition.hpp"
#include "isee/scaled_lasso.hpp"
#include "isee/screening.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace isee {

struct IseeOptions {
  std::optional<double> lambda;  // universal_lambda(n, p) when unset
  SolverOptions solver;
  CVConfig cv;
  std::optional<ScreenConfig> screen;
  std::optional<Partition> partition;  // make_partition(p) when unset
  bool keep_diagonal = false;          // exempt the diagonal from thresholding
  Execution exec = Execution::parallel;
};

struct IseeResult {
  double lambda = 0.0;
  Partition partition;
  std::vector<BlockFit> blocks;
  InnovatedMatrix xhat;
  PrecisionEstimate initial;
  CVResult cv;
  PrecisionEstimate thresholded;
};

double resolve_lambda(const IseeOptions& opts, Index n, Index p);

/// Block fits, innovated-matrix assembly, initial estimator and the
/// cross-validated threshold.
IseeResult run_isee(const DataMatrix& x, const IseeOptions& opts);

struct EnsembleResult {
  PrecisionEstimate estimate;
  std::vector<std::vector<Index>> permutations;
  std::vector<double> taus;
  std::vector<LinkSet> supports;  // per repetition, original labels
};

/// Union of supports across estimates; every entry is the mean of its
/// nonzero values.
PrecisionEstimate combine_nonzero_mean(std::span<const PrecisionEstimate> runs);

/// Column permutation for ensemble repetition `rep`; repetition 0 is the
/// identity.
std::vector<Index> ensemble_permutation(Index p, std::uint64_t seed, Index rep);

/// Runs the thresholded pipeline on `repetitions` column-permuted copies of
/// X, maps every result back to the original labels and combines them.
EnsembleResult permutation_ensemble(const DataMatrix& x, Index repetitions,
                                    std::uint64_t seed,
                                    const IseeOptions& opts);

}  // namespace isee
