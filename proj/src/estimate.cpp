#include "isee/estimate.hpp"

#include "isee/errors.hpp"
#include "isee/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace isee {

std::string_view to_string(EstimateKind kind) {
  switch (kind) {
    case EstimateKind::initial: return "initial";
    case EstimateKind::thresholded: return "thresholded";
    case EstimateKind::refined: return "refined";
    case EstimateKind::bias_corrected: return "bias-corrected";
    case EstimateKind::ensemble: return "ensemble";
  }
  return "unknown";
}

EstimateKind estimate_kind_from_string(std::string_view name) {
  for (const auto kind : {EstimateKind::initial, EstimateKind::thresholded,
                          EstimateKind::refined, EstimateKind::bias_corrected,
                          EstimateKind::ensemble}) {
    if (to_string(kind) == name) return kind;
  }
  throw InvalidInput("unknown estimator kind '" + std::string(name) + "'");
}

PrecisionEstimate::PrecisionEstimate(Matrix values, EstimateKind kind)
    : values_(std::move(values)), kind_(kind) {
  if (values_.rows() != values_.cols()) {
    throw InvalidInput("precision estimate must be square");
  }
  for (Index j = 0; j < values_.cols(); ++j) {
    for (Index k = j + 1; k < values_.rows(); ++k) {
      if (values_(k, j) != values_(j, k)) {
        throw InvalidInput("precision estimate is not exactly symmetric at (" +
                           std::to_string(j) + ", " + std::to_string(k) + ")");
      }
    }
  }
}

LinkSet PrecisionEstimate::support() const {
  LinkSet links;
  for (Index k = 0; k < values_.cols(); ++k) {
    for (Index j = 0; j < k; ++j) {
      if (values_(j, k) != 0.0) links.emplace_hint(links.end(), j, k);
    }
  }
  return links;
}

InnovatedMatrix assemble_xhat(Index n, Index p, std::span<const BlockFit> blocks) {
  std::vector<char> seen(static_cast<size_t>(p), 0);
  InnovatedMatrix xhat{Matrix(n, p)};
  for (const auto& fit : blocks) {
    if (fit.residuals.rows() != n ||
        fit.residuals.cols() != static_cast<Index>(fit.block.size())) {
      throw InvalidInput("block residual shape does not match the data");
    }
    const Matrix cols = fit.residuals * fit.omega_block;
    for (size_t i = 0; i < fit.block.size(); ++i) {
      const Index k = fit.block[i];
      if (k < 0 || k >= p) throw InvalidInput("block node out of range");
      if (seen[static_cast<size_t>(k)]) {
        throw InvalidInput("blocks overlap at node " + std::to_string(k));
      }
      seen[static_cast<size_t>(k)] = 1;
      xhat.values.col(k) = cols.col(static_cast<Index>(i));
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw InvalidInput("blocks do not cover every column");
  }
  return xhat;
}

PrecisionEstimate initial_estimator(const InnovatedMatrix& xhat,
                                    std::span<const BlockFit> blocks,
                                    Execution exec) {
  const Index n = xhat.values.rows();
  if (n < 2) throw InvalidInput("initial estimator needs n >= 2");
  if (!xhat.values.allFinite()) {
    throw NumericalFailure("innovated matrix has non-finite entries");
  }
  Matrix omega =
      scaled_cross_product(xhat.values, 1.0 / static_cast<double>(n), exec);
  for (const auto& fit : blocks) {
    const Index a = static_cast<Index>(fit.block.size());
    for (Index r = 0; r < a; ++r) {
      for (Index c = 0; c < a; ++c) {
        omega(fit.block[static_cast<size_t>(r)], fit.block[static_cast<size_t>(c)]) =
            fit.omega_block(r, c);
      }
    }
  }
  return PrecisionEstimate(std::move(omega), EstimateKind::initial);
}

PrecisionEstimate threshold(const PrecisionEstimate& est, double tau,
                            bool keep_diagonal) {
  if (!(tau >= 0.0)) throw InvalidInput("threshold must be nonnegative");
  Matrix out = est.values();
  for (Index k = 0; k < out.cols(); ++k) {
    for (Index j = 0; j < out.rows(); ++j) {
      if (keep_diagonal && j == k) continue;
      if (!(std::fabs(out(j, k)) >= tau)) out(j, k) = 0.0;
    }
  }
  return PrecisionEstimate(std::move(out), EstimateKind::thresholded);
}

std::vector<double> tau_grid(const PrecisionEstimate& est, Index grid_size) {
  if (grid_size < 2) throw InvalidInput("tau grid needs at least 2 points");
  const Matrix& v = est.values();
  double top = 0.0;
  for (Index k = 0; k < v.cols(); ++k) {
    for (Index j = 0; j < k; ++j) top = std::max(top, std::fabs(v(j, k)));
  }
  if (top == 0.0) return {0.0};
  std::vector<double> grid(static_cast<size_t>(grid_size));
  for (Index i = 0; i < grid_size; ++i) {
    grid[static_cast<size_t>(i)] =
        top * static_cast<double>(i) / static_cast<double>(grid_size - 1);
  }
  grid.back() = top;
  return grid;
}

PrecisionEstimate refine(const DataMatrix& x, const LinkSet& support,
                         double lambda, const PrecisionEstimate& est,
                         const Partition& partition, const SolverOptions& opts,
                         Execution exec, RefineReport* report) {
  const Index n = x.rows();
  const Index p = x.cols();
  if (est.nodes() != p || partition.nodes != p) {
    throw InvalidInput("refine: estimate, partition and data disagree on p");
  }
  std::vector<Index> block_of(static_cast<size_t>(p), -1);
  for (size_t l = 0; l < partition.blocks.size(); ++l) {
    for (const Index k : partition.blocks[l]) block_of[static_cast<size_t>(k)] = static_cast<Index>(l);
  }
  std::vector<std::pair<Index, Index>> links;
  for (const auto& [j, k] : support) {
    if (j == k || j < 0 || k < 0 || j >= p || k >= p) {
      throw InvalidInput("refine: support must hold off-diagonal node pairs");
    }
    if (block_of[static_cast<size_t>(j)] != block_of[static_cast<size_t>(k)]) {
      links.emplace_back(std::min(j, k), std::max(j, k));
    }
  }

  const Matrix& v = est.values();
  std::vector<double> refit(links.size());
  std::vector<char> fell_back(links.size(), 0);
  for_each_index(static_cast<Index>(links.size()), exec, [&](Index idx) {
    const auto [j, k] = links[static_cast<size_t>(idx)];
    IndexSet regressors;
    for (Index m = 0; m < p; ++m) {
      if (m == j || m == k) continue;
      if (v(j, m) != 0.0 || v(k, m) != 0.0) regressors.push_back(m);
    }
    if (static_cast<Index>(regressors.size()) > n - 2) {
      regressors = complement(IndexSet{j, k}, p);
      fell_back[static_cast<size_t>(idx)] = 1;
    }
    Matrix residuals(n, 2);
    const Index pair[2] = {j, k};
    for (Index c = 0; c < 2; ++c) {
      const Index node = pair[c];
      if (regressors.empty()) {
        residuals.col(c) = x.col(node);
        continue;
      }
      const auto problem = make_regression_problem(x.col(node), x, regressors);
      residuals.col(c) = fit_scaled_lasso(problem, lambda, opts).residuals;
    }
    refit[static_cast<size_t>(idx)] = block_precision_from_residuals(residuals)(0, 1);
  });

  Matrix out = v;
  for (size_t i = 0; i < links.size(); ++i) {
    out(links[i].first, links[i].second) = refit[i];
    out(links[i].second, links[i].first) = refit[i];
  }
  if (report != nullptr) {
    report->links_refit = static_cast<Index>(links.size());
    report->fallbacks = std::count(fell_back.begin(), fell_back.end(), 1);
  }
  return PrecisionEstimate(std::move(out), EstimateKind::refined);
}

PrecisionEstimate bias_corrected(const PrecisionEstimate& initial,
                                 std::span<const BlockFit> blocks) {
  const Matrix& init = initial.values();
  const Index p = init.rows();
  Index covered = 0;
  for (const auto& fit : blocks) {
    covered += static_cast<Index>(fit.block.size());
    if (fit.coeffs.rows() != p - static_cast<Index>(fit.block.size())) {
      throw InvalidInput("bias correction: block coefficients do not match p");
    }
  }
  if (covered != p) {
    throw InvalidInput("bias correction: blocks do not match the estimate");
  }
  // Block (l, m) and block (m, l) are transposes of each other in exact
  // arithmetic. Both are computed and averaged entrywise, which makes the
  // result exactly symmetric; the two agree to rounding error.
  Matrix out = init;
  const size_t count = blocks.size();
  auto corrected_block = [&](const BlockFit& bl, const BlockFit& bm) {
    const Matrix c_l_m = coefficient_rows(bl, bm.block);  // rows of C_l in A_m
    const Matrix c_m_l = coefficient_rows(bm, bl.block);  // rows of C_m in A_l
    Matrix cross(bl.block.size(), bm.block.size());
    for (size_t r = 0; r < bl.block.size(); ++r) {
      for (size_t c = 0; c < bm.block.size(); ++c) {
        cross(static_cast<Index>(r), static_cast<Index>(c)) = init(bl.block[r], bm.block[c]);
      }
    }
    return Matrix(-(cross + bl.omega_block * c_l_m.transpose() + c_m_l * bm.omega_block));
  };
  for (size_t l = 0; l < count; ++l) {
    const auto& bl = blocks[l];
    for (size_t m = l + 1; m < count; ++m) {
      const auto& bm = blocks[m];
      const Matrix upper = corrected_block(bl, bm);
      const Matrix lower = corrected_block(bm, bl);
      for (size_t r = 0; r < bl.block.size(); ++r) {
        for (size_t c = 0; c < bm.block.size(); ++c) {
          const auto ri = static_cast<Index>(r);
          const auto ci = static_cast<Index>(c);
          const double v = 0.5 * (upper(ri, ci) + lower(ci, ri));
          out(bl.block[r], bm.block[c]) = v;
          out(bm.block[c], bl.block[r]) = v;
        }
      }
    }
  }
  return PrecisionEstimate(std::move(out), EstimateKind::bias_corrected);
}

}  // namespace isee
