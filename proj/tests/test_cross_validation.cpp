#include "doctest.h"
#include "support.hpp"

using namespace isee;

TEST_CASE("identical folds choose tau 0") {
  const Matrix a = testing::random_spd(5, 1);
  const std::vector<std::pair<Matrix, Matrix>> folds{{a, a}};
  const std::vector<double> grid{0.0, 1e6};
  const auto risk = cv_risk(folds, grid);
  CHECK(risk[0] == 0.0);
  CHECK(risk[0] <= risk[1]);
  CHECK(choose_tau(grid, risk).tau == 0.0);
}

TEST_CASE("tau above every entry zeroes the first fold") {
  const Matrix a = testing::random_spd(6, 2);
  const Matrix b = testing::random_spd(6, 3);
  const Matrix c = testing::random_spd(6, 4);
  const Matrix d = testing::random_spd(6, 5);
  const std::vector<std::pair<Matrix, Matrix>> folds{{a, b}, {c, d}};
  const auto risk = cv_risk(folds, {1e9});
  const double expected = (b.squaredNorm() + d.squaredNorm()) / 2.0;
  CHECK(risk[0] == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("ties go to the smallest tau") {
  const auto res = choose_tau({0.3, 0.1, 0.2}, {1.0, 1.0, 1.0});
  CHECK(res.tau == 0.1);
  CHECK(res.degenerate);
  const auto res2 = choose_tau({0.0, 0.1, 0.2, 0.3}, {3.0, 1.0, 2.0, 1.0});
  CHECK(res2.tau == 0.1);
  CHECK_FALSE(res2.degenerate);
  CHECK_THROWS_AS(choose_tau({0.0}, {}), InvalidInput);
}

TEST_CASE("row split sizes and determinism") {
  const auto rows = cv_row_order(200, 9, 0);
  std::vector<Index> sorted = rows;
  std::sort(sorted.begin(), sorted.end());
  for (Index i = 0; i < 200; ++i) CHECK(sorted[static_cast<size_t>(i)] == i);
  CHECK(cv_row_order(200, 9, 0) == rows);
  CHECK(cv_row_order(200, 9, 1) != rows);
  CHECK(cv_row_order(200, 10, 0) != rows);
}

TEST_CASE("cv threshold matches a direct computation") {
  const InnovatedMatrix xhat{testing::random_normal(30, 6, 7)};
  CVConfig cfg;
  cfg.rng_seed = 11;
  cfg.num_splits = 3;
  const auto res = cv_threshold(xhat, cfg, {}, false, Execution::serial);
  const auto grid = tau_grid(initial_estimator(xhat), cfg.grid_size);
  CHECK(res.grid == grid);
  const Index n1 = 27;  // ceil(0.9 * 30)
  std::vector<std::pair<Matrix, Matrix>> folds;
  for (Index s = 0; s < 3; ++s) {
    const auto rows = cv_row_order(30, 11, s);
    Matrix f(n1, 6), g(3, 6);
    for (Index i = 0; i < n1; ++i) f.row(i) = xhat.values.row(rows[static_cast<size_t>(i)]);
    for (Index i = 0; i < 3; ++i) g.row(i) = xhat.values.row(rows[static_cast<size_t>(n1 + i)]);
    folds.emplace_back(f.transpose() * f / static_cast<double>(n1), g.transpose() * g / 3.0);
  }
  const auto risk = cv_risk(folds, grid);
  for (size_t t = 0; t < grid.size(); ++t) {
    CHECK(res.risk[t] == doctest::Approx(risk[t]).epsilon(1e-12));
  }
}

TEST_CASE("cv config validation") {
  const InnovatedMatrix xhat{testing::random_normal(10, 3, 1)};
  CVConfig cfg;
  cfg.n1_fraction = 1.0;
  CHECK_THROWS_AS(cv_threshold(xhat, cfg), InvalidInput);
  cfg.n1_fraction = 0.9;
  cfg.num_splits = 0;
  CHECK_THROWS_AS(cv_threshold(xhat, cfg), InvalidInput);
  cfg.num_splits = 1;
  cfg.grid_size = 1;
  CHECK_THROWS_AS(cv_threshold(xhat, cfg), InvalidInput);
}
