#pragma once

#include "isee/isee.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace testing {

using isee::Index;
using isee::IndexSet;
using isee::Matrix;
using isee::Vector;

inline Matrix random_normal(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) m(r, c) = normal(engine);
  }
  return m;
}

inline Matrix random_spd(Index p, std::uint64_t seed) {
  const Matrix a = random_normal(p, p, seed);
  Matrix s = a * a.transpose() / static_cast<double>(p) +
             Matrix::Identity(p, p);
  return Matrix((s + s.transpose()) / 2.0);
}

/// Block fit built from the true regression coefficients
/// C_A = -Omega_{A^c,A} Omega_{A,A}^{-1} and the matching residuals.
/// `true_block` puts Omega_{A,A} in omega_block instead of the residual
/// precision.
inline isee::BlockFit oracle_block_fit(const Matrix& x, const Matrix& omega,
                                       const IndexSet& block,
                                       bool true_block) {
  const Index p = omega.rows();
  const Index a = static_cast<Index>(block.size());
  const IndexSet rest = isee::complement(block, p);
  Matrix oaa(a, a);
  Matrix oca(static_cast<Index>(rest.size()), a);
  for (Index c = 0; c < a; ++c) {
    for (Index r = 0; r < a; ++r) oaa(r, c) = omega(block[r], block[c]);
    for (size_t r = 0; r < rest.size(); ++r) {
      oca(static_cast<Index>(r), c) = omega(rest[r], block[c]);
    }
  }
  const Matrix coeffs = -oca * oaa.inverse();
  Matrix residuals(x.rows(), a);
  for (Index c = 0; c < a; ++c) {
    Vector e = x.col(block[c]);
    for (size_t r = 0; r < rest.size(); ++r) {
      e -= coeffs(static_cast<Index>(r), c) * x.col(rest[r]);
    }
    residuals.col(c) = e;
  }
  auto fit = isee::make_block_fit(block, residuals, coeffs.sparseView(0.0, 0.0));
  if (true_block) fit.omega_block = oaa;
  return fit;
}

inline std::vector<isee::BlockFit> oracle_fits(const Matrix& x,
                                               const Matrix& omega,
                                               const isee::Partition& part,
                                               bool true_block) {
  std::vector<isee::BlockFit> fits;
  for (const auto& block : part.blocks) {
    fits.push_back(oracle_block_fit(x, omega, block, true_block));
  }
  return fits;
}

/// Fresh empty directory under the system temp directory.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("isee_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing
