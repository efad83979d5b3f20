#include "isee/simgen.hpp"

#include "isee/errors.hpp"
#include "isee/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <random>

namespace isee {
namespace {

constexpr Index kBlockSize = 20;

std::vector<Index> draw_permutation(Index p, std::uint64_t seed, bool permute) {
  std::vector<Index> perm(static_cast<size_t>(p));
  std::iota(perm.begin(), perm.end(), Index{0});
  if (permute) {
    auto engine = make_engine(seed, {stream::permutation});
    std::shuffle(perm.begin(), perm.end(), engine);
  }
  return perm;
}

Matrix apply_permutation(const Matrix& base, const std::vector<Index>& perm) {
  const Index p = base.rows();
  Matrix out(p, p);
  for (Index k = 0; k < p; ++k) {
    for (Index j = 0; j < p; ++j) {
      out(perm[static_cast<size_t>(j)], perm[static_cast<size_t>(k)]) = base(j, k);
    }
  }
  return out;
}

void require_spd(const Matrix& omega) {
  Eigen::LLT<Matrix> llt(omega);
  if (llt.info() != Eigen::Success) {
    throw InvalidInput("precision matrix is not positive definite");
  }
}

}  // namespace

LinkSet matrix_support(const Matrix& m) {
  LinkSet links;
  for (Index k = 0; k < m.cols(); ++k) {
    for (Index j = 0; j < k; ++j) {
      if (m(j, k) != 0.0) links.emplace_hint(links.end(), j, k);
    }
  }
  return links;
}

GroundTruth make_ground_truth(Matrix omega, std::string model) {
  if (omega.rows() != omega.cols() || omega.rows() < 1) {
    throw InvalidInput("precision matrix must be square");
  }
  if (omega != omega.transpose()) throw InvalidInput("precision matrix must be symmetric");
  require_spd(omega);
  GroundTruth truth;
  truth.support = matrix_support(omega);
  truth.permutation.resize(static_cast<size_t>(omega.rows()));
  std::iota(truth.permutation.begin(), truth.permutation.end(), Index{0});
  truth.spec.model = std::move(model);
  truth.spec.p = omega.rows();
  truth.spec.edges = static_cast<Index>(truth.support.size());
  truth.spec.permuted = false;
  truth.omega = std::move(omega);
  return truth;
}

GroundTruth band_precision(Index p, std::uint64_t seed, bool permute) {
  if (p < 2) throw InvalidInput("band model needs p >= 2");
  Matrix base = Matrix::Identity(p, p);
  for (Index i = 0; i + 1 < p; ++i) {
    base(i, i + 1) = 0.5;
    base(i + 1, i) = 0.5;
  }
  GroundTruth truth;
  truth.permutation = draw_permutation(p, seed, permute);
  truth.omega = apply_permutation(base, truth.permutation);
  require_spd(truth.omega);
  truth.support = matrix_support(truth.omega);
  truth.spec = GeneratorSpec{"band", p, seed, 0,
                             static_cast<Index>(truth.support.size()), permute};
  return truth;
}

GroundTruth block_precision(Index p, std::uint64_t seed, bool permute) {
  if (p < kBlockSize || p % kBlockSize != 0) {
    throw InvalidInput("block model needs p to be a positive multiple of 20");
  }
  const Index blocks = p / kBlockSize;
  Matrix base = Matrix::Zero(p, p);
  auto engine = make_engine(seed, {stream::block_entries});
  std::bernoulli_distribution link(0.3);
  for (Index b = 0; b < blocks; ++b) {
    Matrix block = Matrix::Identity(kBlockSize, kBlockSize);
    for (Index k = 0; k < kBlockSize; ++k) {
      for (Index j = 0; j < k; ++j) {
        const double v = link(engine) ? 0.5 : 0.0;
        block(j, k) = v;
        block(k, j) = v;
      }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(block, Eigen::EigenvaluesOnly);
    const double shift = 0.1 - eig.eigenvalues().minCoeff();
    block.diagonal().array() += shift;
    base.block(b * kBlockSize, b * kBlockSize, kBlockSize, kBlockSize) = block;
  }
  GroundTruth truth;
  truth.permutation = draw_permutation(p, seed, permute);
  truth.omega = apply_permutation(base, truth.permutation);
  require_spd(truth.omega);
  truth.support = matrix_support(truth.omega);
  truth.spec = GeneratorSpec{"block", p, seed, blocks,
                             static_cast<Index>(truth.support.size()), permute};
  return truth;
}

DataMatrix sample_gaussian(const GroundTruth& truth, Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("sample size must be positive");
  const Index p = truth.omega.rows();
  Eigen::LLT<Matrix> llt(truth.omega);
  if (llt.info() != Eigen::Success) {
    throw InvalidInput("ground truth precision is not positive definite");
  }
  // With omega = L L^T, x = L^{-T} z has covariance omega^{-1}.
  Matrix z(p, n);
  auto engine = make_engine(seed, {stream::gaussian});
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < p; ++j) z(j, i) = normal(engine);
  }
  llt.matrixU().solveInPlace(z);
  return z.transpose();
}

}  // namespace isee
