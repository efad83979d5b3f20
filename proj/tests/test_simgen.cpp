#include "doctest.h"
#include "support.hpp"

#include <Eigen/Eigenvalues>

using namespace isee;

namespace {

Vector sorted_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

}  // namespace

TEST_CASE("band model without permutation") {
  const auto t = band_precision(3, 1, false);
  Matrix expected(3, 3);
  expected << 1, .5, 0, .5, 1, .5, 0, .5, 1;
  CHECK(t.omega == expected);
  CHECK(t.support == LinkSet{{0, 1}, {1, 2}});
}

TEST_CASE("band model invariants under permutation") {
  for (const Index p : {2, 7, 50, 201}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto t = band_precision(p, seed);
      CHECK(static_cast<Index>(t.support.size()) == p - 1);
      CHECK(t.omega == t.omega.transpose());
      const Vector a = sorted_eigenvalues(t.omega);
      const Vector b = sorted_eigenvalues(band_precision(p, seed, false).omega);
      CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10);
      // Every link of the base chain maps to a link under the permutation.
      for (Index i = 0; i + 1 < p; ++i) {
        const Index j = t.permutation[static_cast<size_t>(i)];
        const Index k = t.permutation[static_cast<size_t>(i + 1)];
        CHECK(t.omega(j, k) == 0.5);
      }
    }
  }
}

TEST_CASE("block model smallest eigenvalue per block") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto t = block_precision(100, seed);
    for (Index b = 0; b < 5; ++b) {
      Matrix block(20, 20);
      for (Index r = 0; r < 20; ++r) {
        for (Index c = 0; c < 20; ++c) {
          block(r, c) = t.omega(t.permutation[static_cast<size_t>(20 * b + r)],
                                t.permutation[static_cast<size_t>(20 * b + c)]);
        }
      }
      CHECK(std::fabs(sorted_eigenvalues(block)[0] - 0.1) <= 1e-10);
    }
    CHECK(t.spec.blocks == 5);
  }
}

TEST_CASE("block model within-block density") {
  double links = 0.0, pairs = 0.0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto t = block_precision(40, seed, false);
    for (Index b = 0; b < 2; ++b) {
      for (Index j = 0; j < 20; ++j) {
        for (Index k = j + 1; k < 20; ++k) {
          links += t.omega(20 * b + j, 20 * b + k) != 0.0;
          pairs += 1.0;
        }
      }
    }
    // Nothing crosses blocks before the permutation.
    CHECK(t.omega.topRightCorner(20, 20).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(std::fabs(links / pairs - 0.3) <= 0.05);
}

TEST_CASE("single block keeps the permutation inside it") {
  const auto t = block_precision(20, 3);
  Eigen::LLT<Matrix> llt(t.omega);
  CHECK(llt.info() == Eigen::Success);
  CHECK(t.spec.blocks == 1);
  CHECK_THROWS_AS(block_precision(50, 1), InvalidInput);
  CHECK_THROWS_AS(block_precision(0, 1), InvalidInput);
}

TEST_CASE("ground truth validation") {
  Matrix m = Matrix::Identity(3, 3);
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(make_ground_truth(m), InvalidInput);
  m(1, 0) = 0.1;
  CHECK_NOTHROW(make_ground_truth(m));
  m(0, 1) = m(1, 0) = 2.0;
  CHECK_THROWS_AS(make_ground_truth(m), InvalidInput);
}

TEST_CASE("gaussian sampling is seeded and reproducible") {
  const auto t = band_precision(30, 4);
  const DataMatrix a = sample_gaussian(t, 50, 9);
  CHECK(sample_gaussian(t, 50, 9) == a);
  CHECK(sample_gaussian(t, 50, 10) != a);
  CHECK(band_precision(30, 4).omega == t.omega);
  CHECK(block_precision(60, 4).omega == block_precision(60, 4).omega);
}

TEST_CASE("sample covariance of white noise") {
  const Index n = 100000;
  const auto t = make_ground_truth(Matrix::Identity(2, 2));
  const DataMatrix x = sample_gaussian(t, n, 1);
  const Matrix cov = x.transpose() * x / static_cast<double>(n);
  CHECK(max_abs_error(cov, Matrix::Identity(2, 2)) <= 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("oracle innovated data has covariance Omega") {
  const Index n = 100000;
  const auto t = band_precision(4, 2);
  const DataMatrix x = sample_gaussian(t, n, 3);
  const Matrix xt = x * t.omega;
  const Matrix cov = xt.transpose() * xt / static_cast<double>(n);
  // Entry variances are (omega_jk^2 + omega_jj omega_kk) / n <= 1.25 / n.
  CHECK(max_abs_error(cov, t.omega) <= 4.0 * std::sqrt(1.25 / n));
}

TEST_CASE("matrix support lists off-diagonal nonzeros") {
  Matrix m = Matrix::Identity(4, 4);
  m(1, 3) = m(3, 1) = -0.2;
  CHECK(matrix_support(m) == LinkSet{{1, 3}});
}
