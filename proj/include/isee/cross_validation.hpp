#pragma once

#include "isee/estimate.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace isee {

struct CVConfig {
  Index grid_size = 20;
  double n1_fraction = 0.9;
  Index num_splits = 5;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct CVResult {
  double tau = 0.0;
  std::vector<double> grid;
  std::vector<double> risk;  // R(tau) per grid value
  bool degenerate = false;   // every R(tau) equal; tau is the smallest value
};

/// Row split used for one CV repetition: the first ceil(n1_fraction * n)
/// entries of a seeded random permutation of the rows go to the first fold.
std::vector<Index> cv_row_order(Index n, std::uint64_t seed, Index split);

/// R(tau) = mean over fold pairs of |T_tau(first) - second|_F^2, one value
/// per grid entry.
std::vector<double> cv_risk(std::span<const std::pair<Matrix, Matrix>> folds,
                            const std::vector<double>& grid,
                            bool keep_diagonal = false);

/// Grid value with the smallest risk; ties go to the smallest tau.
CVResult choose_tau(std::vector<double> grid, std::vector<double> risk);

/// Chooses the threshold minimizing the average squared Frobenius distance
/// between the thresholded first-fold and raw second-fold covariances of
/// xhat. Ties go to the smallest tau. An empty `grid` means tau_grid of the
/// full-sample initial estimator.
CVResult cv_threshold(const InnovatedMatrix& xhat, const CVConfig& cfg,
                      std::vector<double> grid = {},
                      bool keep_diagonal = false,
                      Execution exec = Execution::parallel);

}  // namespace isee
