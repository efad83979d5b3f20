#pragma once

#include "isee/partition.hpp"
#include "isee/scaled_lasso.hpp"
#include "isee/types.hpp"

#include <Eigen/SparseCore>

#include <vector>

namespace isee {

struct ScreenConfig;

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Joint regression of the nodes in one block on all remaining nodes.
struct BlockFit {
  IndexSet block;
  Matrix residuals;    // n x |A|, column i belongs to block[i]
  Matrix omega_block;  // (n^{-1} residuals^T residuals)^{-1}, symmetrized
  SparseMatrix coeffs; // (p - |A|) x |A|, rows follow complement(block, p)
  Vector sigmas;       // scaled-Lasso noise levels per block node
  bool ridge_applied = false;
  bool converged = true;
};

/// Block precision from a residual matrix. A singular residual Gram gets a
/// diagonal jitter of 1e-8 * trace / |A| and sets `ridge_applied`.
Matrix block_precision_from_residuals(const Matrix& residuals,
                                      bool* ridge_applied = nullptr);

/// Assembles a BlockFit from known residuals and coefficients; used for
/// oracle fits and for tests.
BlockFit make_block_fit(IndexSet block, Matrix residuals, SparseMatrix coeffs);

/// Scaled-Lasso fits of every node in `block` on the complement columns of X
/// (restricted to an SIS-screened submodel per node when `screen` is set).
BlockFit fit_block(const DataMatrix& x, IndexSet block, double lambda,
                   const SolverOptions& opts = {},
                   const ScreenConfig* screen = nullptr);

/// fit_block for every block of the partition. Blocks are independent tasks
/// over the shared read-only X; results are stored by block index.
std::vector<BlockFit> fit_blocks(const DataMatrix& x, const Partition& partition,
                                 double lambda, const SolverOptions& opts,
                                 Execution exec,
                                 const ScreenConfig* screen = nullptr);

/// Rows of the block's coefficient matrix for the given nodes (none of which
/// may lie in the block), as a dense |nodes| x |A| matrix.
Matrix coefficient_rows(const BlockFit& fit, const IndexSet& nodes);

}  // namespace isee
