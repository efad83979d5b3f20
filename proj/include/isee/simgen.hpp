#pragma once

#include "isee/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace isee {

struct GeneratorSpec {
  std::string model;  // "band" or "block"
  Index p = 0;
  std::uint64_t seed = 0;
  Index blocks = 0;  // block model: number of 20 x 20 blocks
  Index edges = 0;
  bool permuted = true;
};

struct GroundTruth {
  Matrix omega;                  // symmetric positive definite
  LinkSet support;               // off-diagonal nonzeros of omega
  std::vector<Index> permutation;  // node i of the base matrix is node permutation[i]
  GeneratorSpec spec;
};

/// Tridiagonal precision with unit diagonal and 0.5 on the first
/// off-diagonals, with rows and columns permuted uniformly at random (or left
/// in place when `permute` is false).
GroundTruth band_precision(Index p, std::uint64_t seed, bool permute = true);

/// Block-diagonal precision with independent 20 x 20 blocks: unit diagonal,
/// off-diagonal entries 0.5 with probability 0.3, diagonal shifted so each
/// block's smallest eigenvalue is 0.1; then randomly permuted. p must be a
/// positive multiple of 20.
GroundTruth block_precision(Index p, std::uint64_t seed, bool permute = true);

/// Builds a GroundTruth from an explicit precision matrix (identity
/// permutation). Throws InvalidInput unless omega is symmetric positive
/// definite.
GroundTruth make_ground_truth(Matrix omega, std::string model = "custom");

/// n rows drawn i.i.d. from N(0, omega^{-1}).
DataMatrix sample_gaussian(const GroundTruth& truth, Index n, std::uint64_t seed);

/// Off-diagonal support of a symmetric matrix.
LinkSet matrix_support(const Matrix& m);

}  // namespace isee
