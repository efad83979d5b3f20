#include "isee/cross_validation.hpp"

#include "isee/errors.hpp"
#include "isee/kernels.hpp"
#include "isee/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isee {

void CVConfig::validate() const {
  if (grid_size < 2) throw InvalidInput("CV grid needs at least 2 values");
  if (!(n1_fraction > 0.0 && n1_fraction < 1.0)) {
    throw InvalidInput("CV first-fold fraction must lie in (0, 1)");
  }
  if (num_splits < 1) throw InvalidInput("CV needs at least one split");
}

std::vector<Index> cv_row_order(Index n, std::uint64_t seed, Index split) {
  std::vector<Index> rows(static_cast<size_t>(n));
  std::iota(rows.begin(), rows.end(), Index{0});
  auto engine = make_engine(seed, {stream::cv_split, static_cast<std::uint64_t>(split)});
  std::shuffle(rows.begin(), rows.end(), engine);
  return rows;
}

std::vector<double> cv_risk(std::span<const std::pair<Matrix, Matrix>> folds,
                            const std::vector<double>& grid,
                            bool keep_diagonal) {
  if (folds.empty()) throw InvalidInput("CV risk needs at least one split");
  std::vector<double> risk(grid.size(), 0.0);
  for (const auto& [first, second] : folds) {
    if (first.rows() != second.rows() || first.cols() != second.cols()) {
      throw InvalidInput("CV fold estimates differ in shape");
    }
    for (size_t t = 0; t < grid.size(); ++t) {
      const double tau = grid[t];
      double sum = 0.0;
      for (Index k = 0; k < first.cols(); ++k) {
        for (Index j = 0; j < first.rows(); ++j) {
          const double a = first(j, k);
          const bool kept = (keep_diagonal && j == k) || std::fabs(a) >= tau;
          const double d = (kept ? a : 0.0) - second(j, k);
          sum += d * d;
        }
      }
      risk[t] += sum;
    }
  }
  for (auto& r : risk) r /= static_cast<double>(folds.size());
  return risk;
}

CVResult choose_tau(std::vector<double> grid, std::vector<double> risk) {
  if (grid.empty() || grid.size() != risk.size()) {
    throw InvalidInput("CV grid and risk curve must be nonempty and aligned");
  }
  std::vector<size_t> order(grid.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return grid[a] < grid[b]; });
  size_t best = order.front();
  for (const size_t i : order) {
    if (risk[i] < risk[best]) best = i;
  }
  CVResult out;
  out.tau = grid[best];
  out.degenerate = std::all_of(risk.begin(), risk.end(),
                               [&](double r) { return r == risk.front(); });
  out.grid = std::move(grid);
  out.risk = std::move(risk);
  return out;
}

CVResult cv_threshold(const InnovatedMatrix& xhat, const CVConfig& cfg,
                      std::vector<double> grid, bool keep_diagonal,
                      Execution exec) {
  cfg.validate();
  const Index n = xhat.values.rows();
  const auto n1 = static_cast<Index>(std::ceil(cfg.n1_fraction * static_cast<double>(n)));
  const Index n2 = n - n1;
  if (n1 < 1 || n2 < 1) {
    throw InvalidInput("CV split leaves an empty fold; need more observations");
  }
  if (grid.empty()) {
    grid = tau_grid(initial_estimator(xhat, {}, exec), cfg.grid_size);
  }

  // Splits are evaluated one at a time; only the running risk is kept.
  std::vector<double> risk(grid.size(), 0.0);
  for (Index split = 0; split < cfg.num_splits; ++split) {
    const auto rows = cv_row_order(n, cfg.rng_seed, split);
    Matrix first(n1, xhat.values.cols());
    Matrix second(n2, xhat.values.cols());
    for (Index i = 0; i < n1; ++i) first.row(i) = xhat.values.row(rows[static_cast<size_t>(i)]);
    for (Index i = 0; i < n2; ++i) second.row(i) = xhat.values.row(rows[static_cast<size_t>(n1 + i)]);
    const std::pair<Matrix, Matrix> fold{
        scaled_cross_product(first, 1.0 / static_cast<double>(n1), exec),
        scaled_cross_product(second, 1.0 / static_cast<double>(n2), exec)};
    const auto split_risk = cv_risk(std::span(&fold, 1), grid, keep_diagonal);
    for (size_t t = 0; t < risk.size(); ++t) risk[t] += split_risk[t];
  }
  for (auto& r : risk) r /= static_cast<double>(cfg.num_splits);
  return choose_tau(std::move(grid), std::move(risk));
}

}  // namespace isee
