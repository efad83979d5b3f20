#include "isee/pipeline.hpp"

#include "isee/errors.hpp"
#include "isee/rng.hpp"

#include <algorithm>
#include <numeric>

namespace isee {

double resolve_lambda(const IseeOptions& opts, Index n, Index p) {
  if (opts.lambda) {
    if (!(*opts.lambda >= 0.0)) throw InvalidInput("lambda must be nonnegative");
    return *opts.lambda;
  }
  return universal_lambda(n, p);
}

IseeResult run_isee(const DataMatrix& x, const IseeOptions& opts) {
  const Index n = x.rows();
  const Index p = x.cols();
  if (p < 2) throw InvalidInput("need at least 2 nodes");
  if (!x.allFinite()) throw InvalidInput("data matrix has non-finite entries");

  IseeResult out;
  out.lambda = resolve_lambda(opts, n, p);
  out.partition = opts.partition ? *opts.partition : make_partition(p);
  const ScreenConfig* screen = opts.screen ? &*opts.screen : nullptr;
  out.blocks = fit_blocks(x, out.partition, out.lambda, opts.solver, opts.exec, screen);
  out.xhat = assemble_xhat(n, p, out.blocks);
  out.initial = initial_estimator(out.xhat, out.blocks, opts.exec);
  out.cv = cv_threshold(out.xhat, opts.cv,
                        tau_grid(out.initial, opts.cv.grid_size),
                        opts.keep_diagonal, opts.exec);
  out.thresholded = threshold(out.initial, out.cv.tau, opts.keep_diagonal);
  return out;
}

PrecisionEstimate combine_nonzero_mean(std::span<const PrecisionEstimate> runs) {
  if (runs.empty()) throw InvalidInput("nothing to combine");
  const Index p = runs.front().nodes();
  Matrix sum = Matrix::Zero(p, p);
  Eigen::MatrixXi count = Eigen::MatrixXi::Zero(p, p);
  for (const auto& run : runs) {
    if (run.nodes() != p) throw InvalidInput("ensemble members differ in size");
    const Matrix& v = run.values();
    for (Index k = 0; k < p; ++k) {
      for (Index j = 0; j < p; ++j) {
        if (v(j, k) != 0.0) {
          sum(j, k) += v(j, k);
          ++count(j, k);
        }
      }
    }
  }
  for (Index k = 0; k < p; ++k) {
    for (Index j = 0; j < p; ++j) {
      if (count(j, k) > 0) sum(j, k) /= static_cast<double>(count(j, k));
    }
  }
  return PrecisionEstimate(std::move(sum), EstimateKind::ensemble);
}

std::vector<Index> ensemble_permutation(Index p, std::uint64_t seed, Index rep) {
  std::vector<Index> perm(static_cast<size_t>(p));
  std::iota(perm.begin(), perm.end(), Index{0});
  if (rep == 0) return perm;
  auto engine = make_engine(seed, {stream::ensemble, static_cast<std::uint64_t>(rep)});
  std::shuffle(perm.begin(), perm.end(), engine);
  return perm;
}

EnsembleResult permutation_ensemble(const DataMatrix& x, Index repetitions,
                                    std::uint64_t seed,
                                    const IseeOptions& opts) {
  if (repetitions < 1) throw InvalidInput("ensemble needs at least one repetition");
  const Index p = x.cols();
  EnsembleResult out;
  std::vector<PrecisionEstimate> runs;
  runs.reserve(static_cast<size_t>(repetitions));
  for (Index rep = 0; rep < repetitions; ++rep) {
    const auto perm = ensemble_permutation(p, seed, rep);
    // Column i of the permuted data is original node perm[i].
    DataMatrix permuted(x.rows(), p);
    for (Index i = 0; i < p; ++i) permuted.col(i) = x.col(perm[static_cast<size_t>(i)]);

    IseeOptions rep_opts = opts;
    rep_opts.partition.reset();
    if (rep > 0) {
      rep_opts.cv.rng_seed = derive_seed(opts.cv.rng_seed,
                                         {stream::cv_seed, static_cast<std::uint64_t>(rep)});
    }
    const auto result = run_isee(permuted, rep_opts);

    const Matrix& v = result.thresholded.values();
    Matrix back(p, p);
    for (Index k = 0; k < p; ++k) {
      for (Index j = 0; j < p; ++j) {
        back(perm[static_cast<size_t>(j)], perm[static_cast<size_t>(k)]) = v(j, k);
      }
    }
    runs.emplace_back(std::move(back), EstimateKind::thresholded);
    out.supports.push_back(runs.back().support());
    out.taus.push_back(result.cv.tau);
    out.permutations.push_back(perm);
  }
  out.estimate = combine_nonzero_mean(runs);
  return out;
}

}  // namespace isee
