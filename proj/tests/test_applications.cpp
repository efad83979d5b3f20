#include "doctest.h"
#include "support.hpp"

using namespace isee;

TEST_CASE("refit on the full support inverts the sample covariance") {
  const DataMatrix x = testing::random_normal(60, 6, 1);
  LinkSet all;
  for (Index j = 0; j < 6; ++j) {
    for (Index k = j + 1; k < 6; ++k) all.insert({j, k});
  }
  const auto refit = refit_columns(x, all);
  const Matrix sigma = x.transpose() * x / 60.0;
  CHECK((sigma * refit.values() - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(refit.values() == refit.values().transpose());
}

TEST_CASE("refit with diagonal support") {
  const DataMatrix x = testing::random_normal(40, 5, 2);
  const auto refit = refit_columns(x, {});
  const Matrix sigma = x.transpose() * x / 40.0;
  for (Index j = 0; j < 5; ++j) {
    CHECK(refit.values()(j, j) == doctest::Approx(1.0 / sigma(j, j)).epsilon(1e-12));
  }
  CHECK(refit.support().empty());
}

TEST_CASE("refit uses the pseudo-inverse on large supports") {
  const DataMatrix x = testing::random_normal(5, 8, 3);  // rank-deficient Gram
  LinkSet all;
  for (Index j = 0; j < 8; ++j) {
    for (Index k = j + 1; k < 8; ++k) all.insert({j, k});
  }
  const auto refit = refit_columns(x, all);
  CHECK(refit.values().allFinite());
}

TEST_CASE("refit beats the initial estimator with the true support") {
  // Calibrated: 25 of 30 replicates.
  int wins = 0;
  for (std::uint64_t r = 0; r < 10; ++r) {
    const auto t = band_precision(20, 2200 + r);
    const auto x = sample_gaussian(t, 400, 2300 + r);
    const auto res = run_isee(x, {});
    wins += max_abs_error(refit_columns(x, t.support).values(), t.omega) <
            max_abs_error(res.initial.values(), t.omega);
  }
  CHECK(wins >= 8);
}

TEST_CASE("lda score examples") {
  const PrecisionEstimate id(Matrix::Identity(3, 3), EstimateKind::initial);
  ClassStats stats{Vector::Unit(3, 0), -Vector::Unit(3, 0), 10, 10};
  const auto d = lda_score(id, stats, 0.0, Vector::Unit(3, 0));
  CHECK(d.score == doctest::Approx(2.0));
  CHECK(d.label == 1);
  const auto boundary = lda_score(id, stats, 0.0, Vector::Zero(3));
  CHECK(boundary.score == 0.0);
  CHECK(boundary.label == 2);
  stats.n2 = 5;
  const Vector x = testing::random_normal(3, 1, 4).col(0);
  CHECK(lda_score(id, stats, 2.5, x).score == doctest::Approx(std::log(2.0)));
}

TEST_CASE("class statistics") {
  Matrix x(4, 2);
  x << 1, 2, 3, 4, 10, 10, 20, 30;
  const std::vector<int> labels{1, 1, 2, 2};
  const auto s = class_stats(x, labels);
  CHECK(s.mu1 == Vector((Vector(2) << 2, 3).finished()));
  CHECK(s.mu2 == Vector((Vector(2) << 15, 20).finished()));
  CHECK(s.n1 == 2);
  const std::vector<int> bad{1, 1, 3, 2};
  CHECK_THROWS_AS(class_stats(x, bad), InvalidInput);
  const std::vector<int> one{1, 1, 1, 1};
  CHECK_THROWS_AS(class_stats(x, one), InvalidInput);
}

TEST_CASE("classification metrics") {
  const std::vector<int> truth{1, 1, 2, 2, 2};
  const auto perfect = classification_metrics(truth, truth);
  CHECK(perfect.specificity == 1.0);
  CHECK(perfect.sensitivity == 1.0);
  CHECK(perfect.mcc == doctest::Approx(1.0));
  const std::vector<int> negative(5, 2);
  const auto none = classification_metrics(negative, truth);
  CHECK(none.sensitivity == 0.0);
  CHECK(none.specificity == 1.0);
  CHECK(none.mcc == 0.0);

  std::vector<int> pred, real;
  auto add = [&](int p, int t, int count) {
    for (int i = 0; i < count; ++i) {
      pred.push_back(p);
      real.push_back(t);
    }
  };
  add(1, 1, 8);
  add(2, 2, 80);
  add(1, 2, 10);
  add(2, 1, 2);
  const auto m = classification_metrics(pred, real);
  CHECK(m.sensitivity == doctest::Approx(0.8));
  CHECK(m.specificity == doctest::Approx(80.0 / 90.0));
  CHECK(m.mcc == doctest::Approx((8.0 * 80 - 10.0 * 2) / std::sqrt(18.0 * 10 * 90 * 82)));
}

TEST_CASE("markowitz two-asset example") {
  const PrecisionEstimate id(Matrix::Identity(2, 2), EstimateKind::initial);
  const Vector w = markowitz_weights(id, {Vector::Unit(2, 0), 0.5});
  CHECK(w[0] == doctest::Approx(0.5));
  CHECK(w[1] == doctest::Approx(0.5));
}

TEST_CASE("markowitz constraints hold on random instances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Index p = 2 + static_cast<Index>(seed % 9);
    const PrecisionEstimate omega(testing::random_spd(p, seed), EstimateKind::initial);
    const Vector mu = testing::random_normal(p, 1, 1000 + seed).col(0);
    const double gamma = 0.1 * static_cast<double>(seed % 7) - 0.2;
    const Vector w = markowitz_weights(omega, {mu, gamma});
    CHECK(std::fabs(w.sum() - 1.0) <= 1e-10);
    CHECK(std::fabs(w.dot(mu) - gamma) <= 1e-10);
  }
}

TEST_CASE("markowitz with mean returns proportional to ones") {
  const PrecisionEstimate id(Matrix::Identity(4, 4), EstimateKind::initial);
  const Vector mu = Vector::Constant(4, 0.3);
  CHECK_THROWS_AS(markowitz_weights(id, {mu, 0.5}), InvalidConfiguration);
  const Vector w = markowitz_weights(id, {mu, 0.3});
  CHECK(w.sum() == doctest::Approx(1.0));
  CHECK_THROWS_AS(markowitz_weights(id, {Vector::Ones(3), 1.0}), InvalidInput);
}

TEST_CASE("innovated scores") {
  const Matrix xhat = testing::random_normal(20, 3, 5);
  CHECK(innovated_scores(xhat, Vector::Zero(20)) == Vector::Zero(3));
  CHECK_THROWS_AS(innovated_scores(xhat, Vector::Zero(19)), InvalidInput);
}

TEST_CASE("innovated scores recover joint effects") {
  const Index n = 100000;
  const auto t = band_precision(4, 6);
  const DataMatrix x = sample_gaussian(t, n, 7);
  Vector beta(4);
  beta << 1.0, 0.0, -0.5, 0.25;
  const Vector y = x * beta;
  const Vector s = innovated_scores(x * t.omega, y);
  CHECK((s - beta).cwiseAbs().maxCoeff() <= 0.03);

  const auto white = make_ground_truth(Matrix::Identity(4, 4));
  const DataMatrix z = sample_gaussian(white, n, 8);
  const Vector s2 = innovated_scores(z, z.col(0));
  CHECK((s2 - Vector::Unit(4, 0)).cwiseAbs().maxCoeff() <= 0.03);
}
