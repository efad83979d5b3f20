#include "isee/block_fit.hpp"

#include "isee/errors.hpp"
#include "isee/kernels.hpp"
#include "isee/screening.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isee {
namespace {

// Regressors for one node: the full complement, or its screened submodel.
IndexSet regressors_for(const DataMatrix& x, const IndexSet& block, Index node,
                        const IndexSet& comp, double lambda,
                        const SolverOptions& opts, const ScreenConfig* screen) {
  if (screen == nullptr) return comp;
  IndexSet selected = sis_screen(x, block, node, *screen);
  const Index size = std::min<Index>(screen->submodel_size(x.rows()),
                                     static_cast<Index>(comp.size()));
  for (int iter = 0; iter < screen->isis_iterations; ++iter) {
    const auto problem = make_regression_problem(x.col(node), x, selected);
    const auto fit = fit_scaled_lasso(problem, lambda, opts);
    IndexSet keep;
    for (size_t i = 0; i < selected.size(); ++i) {
      if (fit.beta[static_cast<Index>(i)] != 0.0) keep.push_back(selected[i]);
    }
    IndexSet fresh;
    std::set_difference(comp.begin(), comp.end(), selected.begin(),
                        selected.end(), std::back_inserter(fresh));
    const Index room = size - static_cast<Index>(keep.size());
    IndexSet added = screen_against(x, fresh, fit.residuals, room,
                                    screen->standardize);
    IndexSet next;
    std::set_union(keep.begin(), keep.end(), added.begin(), added.end(),
                   std::back_inserter(next));
    if (next == selected) break;
    selected = std::move(next);
  }
  return selected;
}

// Row of `node` within complement(block), assuming node is not in block.
Index complement_row(const IndexSet& block, Index node) {
  Index below = 0;
  for (const Index b : block) {
    if (b < node) ++below;
  }
  return node - below;
}

}  // namespace

Matrix block_precision_from_residuals(const Matrix& residuals,
                                      bool* ridge_applied) {
  const Index n = residuals.rows();
  const Index a = residuals.cols();
  if (n < 1 || a < 1) throw InvalidInput("empty residual matrix");
  Matrix gram = (residuals.transpose() * residuals) / static_cast<double>(n);
  gram = 0.5 * (gram + gram.transpose()).eval();

  bool ridge = false;
  Eigen::LLT<Matrix> llt(gram);
  const Vector diag = llt.matrixLLT().diagonal();
  const bool singular =
      llt.info() != Eigen::Success || !diag.allFinite() ||
      diag.minCoeff() <= 1e-7 * std::sqrt(std::max(gram.diagonal().maxCoeff(), 0.0));
  if (singular) {
    const double trace = gram.trace();
    double jitter = 1e-8 * trace / static_cast<double>(a);
    if (!(jitter > 0.0)) jitter = 1e-8;
    gram.diagonal().array() += jitter;
    llt.compute(gram);
    ridge = true;
    if (llt.info() != Eigen::Success) {
      throw NumericalFailure("block residual Gram is not invertible");
    }
  }
  if (ridge_applied != nullptr) *ridge_applied = ridge;
  Matrix omega = llt.solve(Matrix::Identity(a, a));
  return 0.5 * (omega + omega.transpose());
}

BlockFit make_block_fit(IndexSet block, Matrix residuals, SparseMatrix coeffs) {
  if (static_cast<Index>(block.size()) != residuals.cols() ||
      coeffs.cols() != residuals.cols()) {
    throw InvalidInput("block, residual and coefficient shapes disagree");
  }
  BlockFit fit;
  fit.omega_block = block_precision_from_residuals(residuals, &fit.ridge_applied);
  fit.block = std::move(block);
  fit.residuals = std::move(residuals);
  fit.coeffs = std::move(coeffs);
  fit.sigmas = Vector::Constant(fit.residuals.cols(), std::nan(""));
  return fit;
}

BlockFit fit_block(const DataMatrix& x, IndexSet block, double lambda,
                   const SolverOptions& opts, const ScreenConfig* screen) {
  const Index n = x.rows();
  const Index p = x.cols();
  if (block.size() < 2 || block.size() > 3) {
    throw InvalidInput("blocks must have 2 or 3 nodes");
  }
  std::sort(block.begin(), block.end());
  const Index a = static_cast<Index>(block.size());
  if (n <= a) {
    throw InvalidInput("block fit needs more observations than block nodes");
  }
  for (const Index k : block) {
    if (k < 0 || k >= p) throw InvalidInput("block node out of range");
  }
  const IndexSet comp = complement(block, p);

  BlockFit out;
  out.residuals.resize(n, a);
  out.sigmas.resize(a);
  std::vector<Eigen::Triplet<double>> triplets;

  for (Index i = 0; i < a; ++i) {
    const Index node = block[static_cast<size_t>(i)];
    const IndexSet cols =
        regressors_for(x, block, node, comp, lambda, opts, screen);
    if (cols.empty()) {
      out.residuals.col(i) = x.col(node);
      out.sigmas[i] = x.col(node).norm() / std::sqrt(static_cast<double>(n));
      continue;
    }
    const auto problem = make_regression_problem(x.col(node), x, cols);
    const auto fit = fit_scaled_lasso(problem, lambda, opts);
    out.residuals.col(i) = fit.residuals;
    out.sigmas[i] = fit.sigma;
    out.converged = out.converged && fit.converged;
    for (size_t c = 0; c < cols.size(); ++c) {
      const double b = fit.beta[static_cast<Index>(c)];
      if (b != 0.0) triplets.emplace_back(complement_row(block, cols[c]), i, b);
    }
  }
  out.coeffs.resize(p - a, a);
  out.coeffs.setFromTriplets(triplets.begin(), triplets.end());
  out.omega_block = block_precision_from_residuals(out.residuals, &out.ridge_applied);
  out.block = std::move(block);
  return out;
}

std::vector<BlockFit> fit_blocks(const DataMatrix& x, const Partition& partition,
                                 double lambda, const SolverOptions& opts,
                                 Execution exec, const ScreenConfig* screen) {
  if (partition.nodes != x.cols()) {
    throw InvalidInput("partition does not match the data column count");
  }
  std::vector<BlockFit> fits(partition.blocks.size());
  for_each_index(static_cast<Index>(fits.size()), exec, [&](Index l) {
    fits[static_cast<size_t>(l)] = fit_block(
        x, partition.blocks[static_cast<size_t>(l)], lambda, opts, screen);
  });
  return fits;
}

Matrix coefficient_rows(const BlockFit& fit, const IndexSet& nodes) {
  Matrix out(static_cast<Index>(nodes.size()), fit.coeffs.cols());
  for (size_t r = 0; r < nodes.size(); ++r) {
    if (std::binary_search(fit.block.begin(), fit.block.end(), nodes[r])) {
      throw InvalidInput("coefficient rows requested for a node of the block");
    }
    const Index row = complement_row(fit.block, nodes[r]);
    for (Index c = 0; c < fit.coeffs.cols(); ++c) {
      out(static_cast<Index>(r), c) = fit.coeffs.coeff(row, c);
    }
  }
  return out;
}

}  // namespace isee
